from flask import Blueprint, jsonify, request

from chernrr.serializers import chern_from_body, chern_to_response
from config import Settings
from contracts import (
    domain_errors_as_400,
    error_response,
    require_accept_json,
    require_content_type_json,
    require_json_body,
)


def create_chern_blueprint(settings: Settings) -> Blueprint:
    bp = Blueprint("chern", __name__)

    @bp.post("/chern")
    @require_accept_json
    @require_content_type_json
    @require_json_body(required_fields=["n", "c"])
    @domain_errors_as_400
    def post_chern():
        body = request.parsed_json
        cv = chern_from_body(body)
        twists = body.get("twists") or [-3, 0]
        if (not isinstance(twists, list) or len(twists) != 2
                or not all(isinstance(t, int) for t in twists) or twists[0] > twists[1]):
            return error_response(400, "Bad Request: twists must be [lo, hi] with lo <= hi.")
        h0 = body.get("h0")
        if h0 is not None and not isinstance(h0, int):
            return error_response(400, "Bad Request: h0 must be an integer.")
        return jsonify(chern_to_response(cv, range(twists[0], twists[1] + 1), h0)), 200

    return bp
