from flask import Blueprint, jsonify, request

from config import Settings, check_prime
from contracts import (
    domain_errors_as_400,
    error_response,
    require_accept_json,
    require_content_type_json,
    require_json_body,
)
from pencil24.classify import classify
from pencil24.pencil import linear_matrix
from pencil24.serializers import pencil_class_to_response


def create_pencils_blueprint(settings: Settings) -> Blueprint:
    bp = Blueprint("pencils", __name__)

    @bp.post("/pencils/classify")
    @require_accept_json
    @require_content_type_json
    @require_json_body(required_fields=["rows"])
    @domain_errors_as_400
    def classify_pencil():
        body = request.parsed_json
        rows = body.get("rows")
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            return error_response(400, "Bad Request: rows must be a list of two lists of four forms.")
        p = check_prime(int(body.get("prime") or settings.prime))
        a = linear_matrix(rows, p, body.get("names"))
        return jsonify(pencil_class_to_response(classify(a))), 200

    return bp
