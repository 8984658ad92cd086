from .digraph import *
