from flask import Blueprint, jsonify, request

from config import Settings
from contracts import domain_errors_as_400, error_response, query_flag, reject_body, require_accept_json
from spectra.serializers import spectrum_to_response
from spectra.spectrum import enumerate_spectra


def create_spectra_blueprint(settings: Settings) -> Blueprint:
    bp = Blueprint("spectra", __name__)

    @bp.get("/spectra")
    @require_accept_json
    @reject_body
    @domain_errors_as_400
    def get_spectra():
        c = request.args.get("c", default=None, type=int)
        if c is None:
            return error_response(400, "Bad Request: query parameter c is required.")
        kmin = request.args.get("kmin", default=-c, type=int)
        kmax = request.args.get("kmax", default=c, type=int)

        spectra = enumerate_spectra(
            c, kmin, kmax,
            spectrum2=query_flag("spectrum2"),
            symmetric=query_flag("symmetric"),
            c3_nonneg=query_flag("c3_nonneg"),
            exclude_ge_1=query_flag("exclude_ge_1"),
        )
        return jsonify({"c": c, "range": [kmin, kmax], "Spectra": [spectrum_to_response(s) for s in spectra]}), 200

    return bp
