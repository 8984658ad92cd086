from .verification import *
