from dataclasses import replace

from flask import Blueprint, jsonify, request

from catalog.repo import get_entry as repo_get_entry, list_entries, load_catalog
from catalog.serializers import entry_mini_response, entry_to_response
from catalog.verify import verify_all
from config import Settings
from contracts import (
    domain_errors_as_400,
    error_response,
    optional_json_body,
    reject_body,
    require_accept_json,
)


def create_catalog_blueprint(settings: Settings) -> Blueprint:
    bp = Blueprint("catalog", __name__)

    def entries():
        return load_catalog(settings.catalog_path)

    @bp.get("/catalog")
    @require_accept_json
    @reject_body
    @domain_errors_as_400
    def get_catalog():
        limit = request.args.get("limit", default=None, type=int)
        offset = request.args.get("offset", default=0, type=int)
        n = request.args.get("n", default=None, type=int)

        if offset < 0 or (limit is not None and limit < 0):
            return error_response(400, "Bad Request: limit/offset must be non-negative.")

        selected = list_entries(entries(), n=n, limit=limit, offset=offset)
        return jsonify({"Entries": [entry_mini_response(e) for e in selected]}), 200

    @bp.get("/catalog/<entry_id>")
    @require_accept_json
    @reject_body
    @domain_errors_as_400
    def get_entry(entry_id: str):
        entry = repo_get_entry(entries(), entry_id)
        if entry is None:
            return error_response(404, "Not Found")
        return jsonify(entry_to_response(entry)), 200

    # optional body: {"seed": s, "trials": t}
    @bp.post("/catalog/<entry_id>/verify")
    @require_accept_json
    @optional_json_body
    @domain_errors_as_400
    def verify_entry(entry_id: str):
        entry = repo_get_entry(entries(), entry_id)
        if entry is None:
            return error_response(404, "Not Found")

        body = request.parsed_json or {}
        seed, trials = body.get("seed", settings.seed), body.get("trials", settings.trials)
        if not isinstance(seed, int) or not isinstance(trials, int) or trials < 0:
            return error_response(400, "Bad Request: seed and trials must be integers, trials non-negative.")

        report = verify_all([entry], replace(settings, seed=seed, trials=trials))
        return jsonify(report.to_json()), 200

    return bp
