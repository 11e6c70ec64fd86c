"""Clients for the service API.

``LocalClient`` dispatches straight to the typed handlers in-process, so the
CLI works with no server running; ``HttpClient`` talks to a remote
``kitaevgl serve`` instance over HTTP.  Both raise :class:`ClientError`
with a kind of ``usage``, ``domain`` or ``io`` that the CLI maps onto its
exit codes.
"""

from __future__ import annotations

from typing import TypeVar

import httpx
from pydantic import BaseModel

from ..errors import (
    AmbiguousCrossingError,
    ChainError,
    PersistenceError,
    SolverFailureError,
)
from . import api
from . import schemas as s

R = TypeVar("R", bound=BaseModel)

_DOMAIN_ERRORS = (SolverFailureError, AmbiguousCrossingError)


class ClientError(Exception):
    def __init__(self, kind: str, message: str, detail: dict | None = None):
        super().__init__(message)
        self.kind = kind  # "usage" | "domain" | "io"
        self.detail = detail or {}


def _classify(exc: ChainError) -> str:
    if isinstance(exc, PersistenceError):
        return "io"
    return "domain" if isinstance(exc, _DOMAIN_ERRORS) else "usage"


class LocalClient:
    """In-process client: same request/response models, no HTTP hop."""

    def _call(self, fn, req):
        try:
            return fn(req) if req is not None else fn()
        except ChainError as exc:
            detail = {"error": type(exc).__name__, "message": str(exc)}
            if isinstance(exc, AmbiguousCrossingError):
                detail["brackets"] = exc.brackets
            raise ClientError(_classify(exc), str(exc), detail) from exc

    def health(self) -> s.HealthResponse:
        return self._call(api.health, None)

    def spectrum(self, req: s.SpectrumRequest) -> s.SpectrumResponse:
        return self._call(api.spectrum, req)

    def zero_modes(self, req: s.ZeroModesRequest) -> s.ZeroModesResponse:
        return self._call(api.zero_modes, req)

    def sweep(self, req: s.SweepRequest) -> s.SweepResponse:
        return self._call(api.sweep, req)

    def critical(self, req: s.CriticalRequest) -> s.CriticalResponse:
        return self._call(api.critical, req)

    def random_ensemble(self, req: s.EnsembleRequest) -> s.EnsembleResponse:
        return self._call(api.random_ensemble, req)

    def reproduce(self, req: s.ReproduceRequest) -> s.ReproduceResponse:
        return self._call(api.reproduce, req)


class HttpClient:
    """Client for a remote service instance."""

    def __init__(self, base_url: str, timeout: float = 300.0):
        self._client = httpx.Client(base_url=base_url, timeout=timeout)

    def _post(self, path: str, req: BaseModel, response_model: type[R]) -> R:
        try:
            resp = self._client.post(path, json=req.model_dump(mode="json"))
        except httpx.HTTPError as exc:
            raise ClientError("io", f"cannot reach service: {exc}") from exc
        return self._handle(resp, response_model)

    def _handle(self, resp: httpx.Response, response_model: type[R]) -> R:
        if resp.status_code == 422:
            raise ClientError("usage", "request rejected by service validation",
                              detail=resp.json())
        if resp.status_code == 400:
            detail = resp.json().get("detail", {})
            error = detail.get("error", "")
            kind = "domain" if error in (
                "SolverFailureError", "AmbiguousCrossingError") else "usage"
            raise ClientError(kind, detail.get("message", "service error"), detail=detail)
        if resp.status_code != 200:
            raise ClientError("io", f"service returned HTTP {resp.status_code}")
        return response_model.model_validate(resp.json())

    def health(self) -> s.HealthResponse:
        try:
            resp = self._client.get("/health")
        except httpx.HTTPError as exc:
            raise ClientError("io", f"cannot reach service: {exc}") from exc
        return self._handle(resp, s.HealthResponse)

    def spectrum(self, req: s.SpectrumRequest) -> s.SpectrumResponse:
        return self._post("/spectrum", req, s.SpectrumResponse)

    def zero_modes(self, req: s.ZeroModesRequest) -> s.ZeroModesResponse:
        return self._post("/zero-modes", req, s.ZeroModesResponse)

    def sweep(self, req: s.SweepRequest) -> s.SweepResponse:
        return self._post("/sweep", req, s.SweepResponse)

    def critical(self, req: s.CriticalRequest) -> s.CriticalResponse:
        return self._post("/critical", req, s.CriticalResponse)

    def random_ensemble(self, req: s.EnsembleRequest) -> s.EnsembleResponse:
        return self._post("/random-ensemble", req, s.EnsembleResponse)

    def reproduce(self, req: s.ReproduceRequest) -> s.ReproduceResponse:
        return self._post("/reproduce", req, s.ReproduceResponse)
