from .concurrence import *
