from .settings import Settings, settings
from .cli_config import CliConfig

__all__ = ["Settings", "settings", "CliConfig"]
