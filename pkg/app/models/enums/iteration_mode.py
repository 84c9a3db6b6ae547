from enum import Enum

class IterationMode(str, Enum):
    first_order = "first-order"
    partitioned_second_order = "partitioned-second-order"
