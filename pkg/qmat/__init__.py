from .linalg import *
