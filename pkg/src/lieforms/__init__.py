"""Exact cohomology of Lie algebras with complex, symplectic and D-complex structures."""

from __future__ import annotations

__version__ = "0.1.0"
