from .constants import *
from .exceptions import *
from .utils import *
