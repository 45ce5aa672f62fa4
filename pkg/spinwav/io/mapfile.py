"""
Self-describing binary container for maps and coefficients.

Layout:
    8 bytes   magic b"SPINWAV1"
    4 bytes   header length H, unsigned little-endian
    H bytes   UTF-8 JSON header
    payload   little-endian float64 (re, im) pairs, row-major in the declared
              axis order

Header keys: kind (sphere, rotation, harmonic, wigner), L, N, spin, grid,
axes, shape and an optional free-form ``extra`` dict.
"""

import json
import struct
import numpy as np

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Union

from ..harmonics.grid import build_grid, build_rotation_grid
from ..harmonics.sht import HarmonicCoeffs, SphereMap
from ..harmonics.so3 import RotationMap, WignerCoeffs
from ..exceptions import MapFileError, SpinwavError

MAGIC = b"SPINWAV1"
HEADER_OFFSET = len(MAGIC) + 4
MAP_EXTENSION = ".swv"

AXES = {
    "sphere": ["theta", "phi"],
    "rotation": ["gamma", "beta", "alpha"],
    "harmonic": ["lm"],
    "wigner": ["n", "ell", "m"],
}
REQUIRED_KEYS = ("kind", "L", "N", "spin", "grid", "axes", "shape")

MapData = Union[SphereMap, RotationMap, HarmonicCoeffs, WignerCoeffs]


@dataclass(frozen=True, eq=False)
class MapFile:
    """
    Contents of a map file.

    Attributes:
        kind: One of sphere, rotation, harmonic, wigner
        header: Full JSON header
        data: Decoded object
    """
    kind: str
    header: Dict[str, Any] = field(repr=False)
    data: MapData = field(repr=False)

    @property
    def extra(self) -> Dict[str, Any]:
        return self.header.get("extra", {})


def _describe(data: MapData) -> Dict[str, Any]:
    if isinstance(data, SphereMap):
        return {"kind": "sphere", "L": data.L, "N": None, "spin": data.s,
                "grid": data.grid.descriptor(), "array": data.samples}
    if isinstance(data, RotationMap):
        return {"kind": "rotation", "L": data.L, "N": data.N, "spin": 0,
                "grid": data.grid.descriptor(), "array": data.samples}
    if isinstance(data, HarmonicCoeffs):
        return {"kind": "harmonic", "L": data.L, "N": None, "spin": data.s,
                "grid": None, "array": data.values}
    if isinstance(data, WignerCoeffs):
        return {"kind": "wigner", "L": data.L, "N": data.N, "spin": 0,
                "grid": None, "array": data.values}
    raise TypeError(f"Cannot write objects of type {type(data).__name__}.")


def write_map(
    filename: Union[str, Path],
    data: MapData,
    extra: Optional[Dict[str, Any]] = None
) -> str:
    """
    Write a map or coefficient object.

    Args:
        filename: Output path
        data: SphereMap, RotationMap, HarmonicCoeffs or WignerCoeffs
        extra: Optional metadata stored under header["extra"]

    Returns:
        str: Path written
    """
    info = _describe(data)
    array = np.ascontiguousarray(info.pop("array"), dtype=complex)
    header = dict(info)
    header["axes"] = AXES[info["kind"]]
    header["shape"] = list(array.shape)
    header["extra"] = extra or {}
    encoded = json.dumps(header, sort_keys=True).encode("utf-8")

    payload = np.empty(array.shape + (2,), dtype="<f8")
    payload[..., 0] = array.real
    payload[..., 1] = array.imag

    path = Path(filename)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as file:
        file.write(MAGIC)
        file.write(struct.pack("<I", len(encoded)))
        file.write(encoded)
        file.write(payload.tobytes())
    return str(path)


def _parse_header(raw: bytes) -> Dict[str, Any]:
    if len(raw) < HEADER_OFFSET:
        raise MapFileError("File too short for a map header", offset=len(raw))
    if raw[:len(MAGIC)] != MAGIC:
        raise MapFileError("Bad magic tag", offset=0)
    (length,) = struct.unpack("<I", raw[len(MAGIC):HEADER_OFFSET])
    if len(raw) < HEADER_OFFSET + length:
        raise MapFileError("Truncated header", offset=len(raw))
    try:
        header = json.loads(raw[HEADER_OFFSET:HEADER_OFFSET + length].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise MapFileError(f"Unreadable header: {e}", offset=HEADER_OFFSET)
    if not isinstance(header, dict):
        raise MapFileError("Header is not a JSON object", offset=HEADER_OFFSET)
    missing = [key for key in REQUIRED_KEYS if key not in header]
    if missing:
        raise MapFileError(f"Header misses keys {missing}", offset=HEADER_OFFSET)
    if header["kind"] not in AXES:
        raise MapFileError(f"Unknown kind '{header['kind']}'", offset=HEADER_OFFSET)
    if header["axes"] != AXES[header["kind"]]:
        raise MapFileError(f"Unexpected axis order {header['axes']}", offset=HEADER_OFFSET)
    header["_payload_offset"] = HEADER_OFFSET + length
    return header


def _build(header: Dict[str, Any], array: np.ndarray) -> MapData:
    kind, L, N, spin = header["kind"], header["L"], header["N"], header["spin"]
    if kind == "sphere":
        return SphereMap(grid=build_grid(L), s=spin, samples=array)
    if kind == "rotation":
        return RotationMap(grid=build_rotation_grid(L, N), samples=array)
    if kind == "harmonic":
        return HarmonicCoeffs(L, spin, array)
    return WignerCoeffs(L, N, array)


def read_map(filename: Union[str, Path]) -> MapFile:
    """
    Read a map file written by write_map.

    Raises:
        MapFileError: If the file is malformed; the error carries the byte offset
        OSError: If the file cannot be opened
    """
    with open(filename, "rb") as file:
        raw = file.read()

    header = _parse_header(raw)
    offset = header.pop("_payload_offset")
    shape = tuple(int(x) for x in header["shape"])
    expected = 16 * int(np.prod(shape))
    available = len(raw) - offset
    if available != expected:
        raise MapFileError(
            f"Payload holds {available} bytes, header declares {expected}",
            offset=offset
        )
    payload = np.frombuffer(raw, dtype="<f8", offset=offset).reshape(shape + (2,))
    array = payload[..., 0] + 1j * payload[..., 1]
    try:
        data = _build(header, array)
    except (SpinwavError, TypeError, ValueError) as e:
        raise MapFileError(f"Header inconsistent with payload: {e}", offset=HEADER_OFFSET)
    return MapFile(kind=header["kind"], header=header, data=data)
