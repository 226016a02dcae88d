"""Measurement-model simulator: quantum measurement schemes, error and
disturbance quantities, uncertainty-relation reports, audits, and searches.

All numerical work happens in the compiled extension; this package just
re-exports it.
"""

from ._qmeasure import *  # noqa: F401,F403
from ._qmeasure import __doc__ as _core_doc  # noqa: F401
