from .measurement import *
from .discord import *
