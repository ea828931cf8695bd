from .widen import widenOnTruncation
