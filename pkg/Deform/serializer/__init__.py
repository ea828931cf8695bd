from .response.check_response import *
from .response.map_response import *
from .run_config import *
