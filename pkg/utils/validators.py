"""
Валидаторы аргументов командной строки
"""
import re
from typing import List

from services.repcount import SUPPORTED_M

_RANGE_PATTERN = re.compile(r'^(\d+)\.\.(\d+)$')
_LIST_PATTERN = re.compile(r'^\d+(,\d+)*$')


def parse_k_range(text: str) -> List[int]:
    """Диапазон k: "1..8", список "1,3,5" или одно число"""
    text = text.strip()
    match = _RANGE_PATTERN.match(text)
    if match:
        low, high = int(match.group(1)), int(match.group(2))
        if low < 1 or high < low:
            raise ValueError(f"Некорректный диапазон k: '{text}'")
        return list(range(low, high + 1))
    if not _LIST_PATTERN.match(text):
        raise ValueError(f"Ожидается 'a..b' или 'a,b,c', получено '{text}'")
    values = sorted({int(x) for x in text.split(',')})
    if values[0] < 1:
        raise ValueError("k должно быть положительным")
    return values


def parse_m_list(text: str) -> List[int]:
    """Список m через запятую, только 1, 2, 4"""
    text = text.strip()
    if not _LIST_PATTERN.match(text):
        raise ValueError(f"Ожидается список вида '1,2,4', получено '{text}'")
    values = sorted({int(x) for x in text.split(',')})
    for m in values:
        if m not in SUPPORTED_M:
            raise ValueError(f"m должно быть одним из {SUPPORTED_M}, получено {m}")
    return values


def validate_m(text: str) -> int:
    m = int(text)
    if m not in SUPPORTED_M:
        raise ValueError(f"m должно быть одним из {SUPPORTED_M}")
    return m


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise ValueError("Ожидается положительное число")
    return value


def nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise ValueError("Ожидается неотрицательное число")
    return value
