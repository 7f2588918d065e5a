"""Rigorous existence tests."""

from src.verification.krawczyk import (
    KrawczykStep,
    VerificationCertificate,
    jacobian_enclosure,
    krawczyk_test,
    newton_refine,
    residual_enclosure,
    verify_root,
)

__all__ = [
    "KrawczykStep",
    "VerificationCertificate",
    "jacobian_enclosure",
    "krawczyk_test",
    "newton_refine",
    "residual_enclosure",
    "verify_root",
]
