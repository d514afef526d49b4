import os

from ..errors import ResourceError

DEFAULT_LIMIT = 10**6
ENV_VAR = "HECKELAB_MAX_ENUM"


def enumeration_limit() -> int:
    raw = os.environ.get(ENV_VAR)
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_LIMIT


def check_size(size: int, what: str) -> None:
    limit = enumeration_limit()
    if size > limit:
        raise ResourceError(f"{what}: {size} exceeds enumeration guard {limit} (set {ENV_VAR} to raise it)")
