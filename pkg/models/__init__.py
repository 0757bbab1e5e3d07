from .heisenberg import *
