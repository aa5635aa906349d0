from ._envcert import Error, Malformed, Mismatch, __version__, certify, contains, problem_hash, verify

__all__ = ["Error", "Malformed", "Mismatch", "__version__", "certify", "contains", "problem_hash", "verify"]
