from .presets import *
from .export import *
from .selftest import *
