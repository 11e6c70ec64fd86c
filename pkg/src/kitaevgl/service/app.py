"""FastAPI application wrapping the core package.

Run it with ``kitaevgl serve`` or ``uvicorn kitaevgl.service.app:app``.
Domain and validation errors raised by the core surface as HTTP 400 with a
structured detail body; pydantic request validation keeps FastAPI's usual
422 behavior.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import AmbiguousCrossingError, ChainError
from . import api
from . import schemas as s


def error_detail(exc: ChainError) -> dict:
    detail: dict = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, AmbiguousCrossingError):
        detail["brackets"] = exc.brackets
    return detail


def create_app() -> FastAPI:
    app = FastAPI(
        title="kitaevgl",
        version=__version__,
        description="Non-Hermitian Kitaev chain with balanced gain and loss",
    )

    @app.exception_handler(ChainError)
    async def chain_error_handler(request: Request, exc: ChainError):
        return JSONResponse(status_code=400, content={"detail": error_detail(exc)})

    @app.get("/health", response_model=s.HealthResponse)
    def health():
        return api.health()

    @app.post("/spectrum", response_model=s.SpectrumResponse)
    def spectrum(req: s.SpectrumRequest):
        return api.spectrum(req)

    @app.post("/zero-modes", response_model=s.ZeroModesResponse)
    def zero_modes(req: s.ZeroModesRequest):
        return api.zero_modes(req)

    @app.post("/sweep", response_model=s.SweepResponse)
    def sweep(req: s.SweepRequest):
        return api.sweep(req)

    @app.post("/critical", response_model=s.CriticalResponse)
    def critical(req: s.CriticalRequest):
        return api.critical(req)

    @app.post("/random-ensemble", response_model=s.EnsembleResponse)
    def random_ensemble(req: s.EnsembleRequest):
        return api.random_ensemble(req)

    @app.post("/reproduce", response_model=s.ReproduceResponse)
    def reproduce(req: s.ReproduceRequest):
        return api.reproduce(req)

    return app


app = create_app()
