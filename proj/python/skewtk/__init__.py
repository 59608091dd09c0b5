try:
    from ._skewtk import *  # noqa: F401,F403
    from ._skewtk import bounds  # noqa: F401
except ImportError:  # test runs import the module straight from the build tree
    from _skewtk import *  # noqa: F401,F403
    from _skewtk import bounds  # noqa: F401
