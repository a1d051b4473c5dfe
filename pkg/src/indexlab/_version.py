"""Single source for the package version string at runtime."""
from importlib import metadata

try:
    __version__ = metadata.version("indexlab")
except metadata.PackageNotFoundError:
    __version__ = "0+unknown"
