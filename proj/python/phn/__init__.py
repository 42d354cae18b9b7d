"""Parallel hybrid network: exact VQC simulation + MLP with trainable mixing.

Everything lives in the compiled extension; this package only re-exports it.
"""

try:
    from ._phn import *  # noqa: F401,F403
    from ._phn import __version__  # noqa: F401
except ImportError:  # flat layouts put the extension on sys.path directly
    from _phn import *  # noqa: F401,F403
    from _phn import __version__  # noqa: F401
