from .local import list_local_files
from .json import read_json, write_json
from .mapfile import MapFile, read_map, write_map
