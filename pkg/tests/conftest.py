"""Pytest configuration and fixtures."""

import os
import tempfile
from pathlib import Path

import pytest
import yaml

from src.belltest import honest_bell_device, rotated_device
from src.config import set_config
from src.graphs import ColoredGraph, complete_graph, path_graph

DATA_DIR = Path(__file__).resolve().parents[1] / "data"


@pytest.fixture(autouse=True)
def reset_config():
    """Drop the process-wide configuration before and after every test."""
    set_config(None)
    yield
    set_config(None)


@pytest.fixture
def honest_bell():
    """Ideal Bell-pair device."""
    return honest_bell_device()


@pytest.fixture
def rotated_bell():
    """Bell-pair device whose X' on site 1 is off by 0.05 rad."""
    return rotated_device(honest_bell_device(), 1, "X", 0.05)


@pytest.fixture
def path3():
    """Path 0-1-2 with its bundled two-color partitions."""
    return ColoredGraph.from_json(DATA_DIR / "graphs" / "path3.json")


@pytest.fixture
def triangle():
    """Three-colored triangle."""
    return ColoredGraph.from_json(DATA_DIR / "graphs" / "triangle.json")


@pytest.fixture
def small_graphs():
    """Every bundled graph plus generated path and complete graphs."""
    graphs = [ColoredGraph.from_json(p) for p in sorted((DATA_DIR / "graphs").glob("*.json"))]
    return graphs + [path_graph(4), complete_graph(3)]


@pytest.fixture
def temp_config_file():
    """Write a temporary configuration file and yield its path."""
    config_data = {
        "application": {"name": "mbqc-selftest-test", "environment": "testing"},
        "protocol": {
            "alpha": 0.1,
            "beta": 0.8,
            "c1": None,
            "c2": 2.0,
            "safety_factor": 4.0,
            "s": 4,
        },
        "simulation": {"dense_limit_exponent": 10, "threads": 2},
        "reports": {"schema_version": 1},
        "logging": {"level": "INFO", "format": "%(levelname)s %(message)s"},
    }
    with tempfile.NamedTemporaryFile(mode="w", suffix=".yaml", delete=False) as temp_file:
        yaml.dump(config_data, temp_file)
        temp_path = temp_file.name

    yield temp_path

    os.unlink(temp_path)
