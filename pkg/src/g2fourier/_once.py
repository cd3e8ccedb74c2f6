import threading
from functools import wraps


def once(fn):
    """Thread-safe memoization of a zero-argument builder."""
    lock = threading.Lock()
    box = []

    @wraps(fn)
    def wrapper():
        if box:
            return box[0]
        with lock:
            if not box:
                box.append(fn())
        return box[0]

    return wrapper
