import json
import numpy as np

from pathlib import Path


def _to_builtin(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def read_json(filename):
    with open(filename, 'r', encoding='utf-8') as file:
        content = json.load(file)
    return content


def write_json(filename, content):
    """
    Write a report as indented JSON, converting numpy scalars and arrays.

    Args:
        filename (str): Output path.
        content (dict): Report content.

    Returns:
        str: Path written.
    """
    path = Path(filename)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as file:
        json.dump(content, file, indent=2, sort_keys=True, default=_to_builtin)
    return str(path)
