from enum import Enum

class SchemeType(str, Enum):
    gamma = "gamma"
    ab = "ab"
