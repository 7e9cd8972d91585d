__version__ = "0.1.0"
__all__ = ["calculator", "cli", "config", "export", "families", "gauss", "invariants", "moves", "poly", "render", "search", "utils"]
