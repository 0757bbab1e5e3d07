from .xyz_chain import *
from .thermal import *
