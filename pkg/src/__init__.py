"""Self-testing simulator for measurement-based quantum computation devices."""

__version__ = "1.0.0"
