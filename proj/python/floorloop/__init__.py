"""Loop closures from opposing viewpoints via floor-patch homography.

The heavy lifting lives in the compiled extension ``floorloop._core``;
this package re-exports its public surface.
"""

from floorloop._core import *  # noqa: F401,F403
from floorloop._core import __doc__ as _core_doc  # noqa: F401
