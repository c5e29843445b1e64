"""HTTP service exposing sessions, event streams, and artifacts."""

from .app import make_server, serve_forever
from .sessions import Session, SessionStore

__all__ = ["Session", "SessionStore", "make_server", "serve_forever"]
