from .chordal import *
