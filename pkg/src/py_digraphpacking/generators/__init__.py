from .generators import *
