"""Handler modules for organizing controller functionality"""

from .base import BaseHandler
from .braid_handler import BraidHandler
from .habiro_handler import BCHandler, HabiroHandler
from .multi_handler import MultiHandler
from .mzv_handler import MZVHandler
from .qsm_handler import QSMHandler
from .repro_handler import ReproHandler
from .witt_handler import WittHandler

__all__ = [
    'BaseHandler',
    'HabiroHandler',
    'BCHandler',
    'QSMHandler',
    'MultiHandler',
    'WittHandler',
    'MZVHandler',
    'BraidHandler',
    'ReproHandler',
]
