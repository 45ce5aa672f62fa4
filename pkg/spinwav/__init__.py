from . import harmonics
from . import wavelets
from . import processing
from . import io
from . import utils
name="spinwav directional spin wavelets"
__version__ = '0.1'
