from .base_check import BaseCheck


__all__ = ["BaseCheck"]
