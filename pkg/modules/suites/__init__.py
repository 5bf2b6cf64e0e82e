from .algebra import AlgebraSuite
from .base import BaseSuite, CheckResult, SuiteReport
from .braid_suite import BraidSuite
from .multivar_suite import MultivarSuite
from .mzv_suite import MZVSuite
from .qsm_suite import QSMSuite
from .service import SuiteService
from .witt_suite import WittSuite

__all__ = [
    "BaseSuite",
    "CheckResult",
    "SuiteReport",
    "SuiteService",
    "AlgebraSuite",
    "QSMSuite",
    "MultivarSuite",
    "WittSuite",
    "MZVSuite",
    "BraidSuite",
]
