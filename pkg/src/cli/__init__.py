"""Command-line commands and console output."""

from __future__ import annotations
