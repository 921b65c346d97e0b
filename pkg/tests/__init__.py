"""Test suite for the MBQC self-testing simulator."""
