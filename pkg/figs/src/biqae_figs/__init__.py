"""Figure scripts over the amplitude-estimation benchmark's flat-file exports."""

__version__ = "0.1.0"
