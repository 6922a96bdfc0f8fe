from flask import Flask

from catalog.routes import create_catalog_blueprint
from chernrr.routes import create_chern_blueprint
from config import Settings, configure_logging, load_settings
from contracts import require_accept_json, reject_body
from pencil24.routes import create_pencils_blueprint
from spectra.routes import create_spectra_blueprint


def create_app(settings: Settings | None = None) -> Flask:
    app = Flask(__name__)
    settings = settings or load_settings()
    configure_logging(settings)

    @app.get("/")
    @require_accept_json
    @reject_body
    def health_check():
        return {"status": "ok", "prime": settings.prime}, 200

    app.register_blueprint(create_chern_blueprint(settings))
    app.register_blueprint(create_spectra_blueprint(settings))
    app.register_blueprint(create_pencils_blueprint(settings))
    app.register_blueprint(create_catalog_blueprint(settings))

    return app

if __name__ == "__main__":
    create_app().run(port=8080, debug=True)
