from .sweep import *
from .detectors import *
