"""HTTP service layer: pydantic schemas, FastAPI app, clients."""

from .app import app, create_app
from .client import ClientError, HttpClient, LocalClient

__all__ = ["app", "create_app", "ClientError", "HttpClient", "LocalClient"]
