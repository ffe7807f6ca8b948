class SurfaceCyclicError(Exception):
    """Base class for domain errors raised by this package.

    The CLI maps every subclass to exit status 1 and reports ``code`` in its
    error JSON.
    """

    code = "error"

    def to_json(self):
        return {"error": self.code, "message": str(self)}
