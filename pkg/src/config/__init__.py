from .app import config

__all__ = ["config"]
