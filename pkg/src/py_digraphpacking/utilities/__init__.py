from .utilities import *
