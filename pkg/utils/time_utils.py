from datetime import datetime, timezone


def now_rfc1123() -> str:
    """Current UTC time as an HTTP date, used to stamp verification reports."""
    return datetime.now(timezone.utc).strftime("%a, %d %b %Y %H:%M:%S GMT")
