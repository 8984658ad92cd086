from .contrafunctional import *
