"""Exception hierarchy shared across the package.

The CLI maps these onto its exit-code contract: InputError -> 2,
CapExceeded -> 3, TheoremViolation -> 4.
"""


class InputError(ValueError):
    """Malformed input: bad spec, bad element, inconsistent options."""


class CapExceeded(RuntimeError):
    """An enumeration or search would exceed its configured cap."""


class TheoremViolation(RuntimeError):
    """A verified identity failed; carries a serializable witness.

    This is never an input problem: it means the artifact found a
    counterexample to an identity it is supposed to certify, so callers
    must abort loudly rather than continue.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
