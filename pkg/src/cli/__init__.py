from src.cli.app import RunConfig, app, main

__all__ = ["RunConfig", "app", "main"]
