from .algebra import *
from .dynamics import *
from .fock import *
from .isomap import *
from .qcore import *
from .suites import *
from .utils import *
