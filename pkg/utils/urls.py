from flask import request


def entry_self_url(entry_id: str) -> str:
    return request.host_url.rstrip("/") + f"/catalog/{entry_id}"


def entry_mini(entry_id: str) -> dict:
    return {"id": entry_id, "self": entry_self_url(entry_id)}
