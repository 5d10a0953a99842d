"""HTTP surface mirroring the CLI verbs."""

from .routes import router

__all__ = ["router"]
