"""voidlab: numerical laboratory for void-limited relaxation in charge-conserving dynamics."""

__version__ = "0.1.0"
