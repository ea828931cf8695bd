from .error_type import ErrorType
from .exception import DeformException
