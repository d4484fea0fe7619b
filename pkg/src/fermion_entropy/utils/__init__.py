from .config import load_config, setting, tolerance
from .seeds import derive_seed

__all__ = [
    "load_config",
    "setting",
    "tolerance",
    "derive_seed",
]
