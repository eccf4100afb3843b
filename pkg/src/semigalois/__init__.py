"""Finite monoid actions, their galois objects, and the variety dictionary
between regular languages, stamps and DFAs."""

from semigalois.errors import (
    ActionLawViolation,
    AlphabetMismatch,
    ArityMismatch,
    AssociativityViolation,
    EmptyAction,
    IdentityViolation,
    IllDefined,
    NotEndomorphism,
    NotMono,
    NotSurjective,
    ParseError,
    ReconstructionFailure,
    SemiGaloisError,
    SideMismatch,
    SignatureMismatch,
    SizeCapExceeded,
    UnknownLetter,
)

__version__ = "0.1.0"
