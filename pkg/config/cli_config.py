"""
Модель параметров командной строки
"""
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from .settings import settings


class CliConfig(BaseModel):
    """Параметры одной команды CLI после разбора argparse"""

    model_config = ConfigDict(frozen=True)

    order: int = Field(default_factory=lambda: settings.DEFAULT_ORDER, ge=settings.MIN_ORDER)
    output_format: Literal["text", "json"] = Field(default_factory=lambda: settings.OUTPUT_FORMAT)
    k: Optional[int] = Field(default=None, ge=1)
    m: Optional[Literal[1, 2, 4]] = None
    n: Optional[int] = Field(default=None, ge=0)
    j: Optional[int] = Field(default=None, ge=1)

    @classmethod
    def from_args(cls, args, **fields) -> "CliConfig":
        """Собрать конфигурацию из argparse.Namespace; None означает значение из settings"""
        data = dict(fields)
        order = getattr(args, "order", None)
        if order is not None:
            data["order"] = order
        output_format = getattr(args, "format", None)
        if output_format is not None:
            data["output_format"] = output_format
        for name in ("k", "m", "n", "j"):
            value = getattr(args, name, None)
            if name not in data and isinstance(value, int):
                data[name] = value
        return cls(**data)
