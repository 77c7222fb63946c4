"""
Конфигурация qform
"""
import os
from dotenv import load_dotenv
from typing import Optional

load_dotenv()


class Settings:
    """Настройки приложения"""

    # Порядок усечения рядов по умолчанию (число целых степеней q)
    # Переопределяется одной переменной:
    #   QFORM_ORDER
    DEFAULT_ORDER: int = int(os.getenv("QFORM_ORDER", "300"))

    # Формат вывода CLI: text | json
    OUTPUT_FORMAT: str = os.getenv("QFORM_FORMAT", "text").strip().lower()

    # Логирование
    LOG_LEVEL: str = os.getenv("QFORM_LOG_LEVEL", "INFO").strip().upper()
    LOG_FILE: Optional[str] = os.getenv("QFORM_LOG_FILE") or None

    # Число процессов для verify (1 = последовательно в текущем процессе)
    WORKERS: int = int(os.getenv("QFORM_WORKERS", "1"))

    # Минимальный допустимый порядок
    # (НЕ читается из env: нижняя граница)
    MIN_ORDER: int = 8

    OUTPUT_FORMATS: tuple[str, ...] = ("text", "json")

    @classmethod
    def validate(cls) -> bool:
        """Проверка корректности переменных окружения"""
        if cls.DEFAULT_ORDER < cls.MIN_ORDER:
            raise ValueError(f"QFORM_ORDER должен быть не меньше {cls.MIN_ORDER}, получено {cls.DEFAULT_ORDER}")
        if cls.WORKERS < 1:
            raise ValueError(f"QFORM_WORKERS должен быть положительным, получено {cls.WORKERS}")
        if cls.OUTPUT_FORMAT not in cls.OUTPUT_FORMATS:
            raise ValueError(f"QFORM_FORMAT должен быть одним из {cls.OUTPUT_FORMATS}, получено '{cls.OUTPUT_FORMAT}'")
        return True


settings = Settings()
