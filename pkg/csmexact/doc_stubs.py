params_arg = """
    params: ``ModelParams``
        Particle number and exact couplings of the model.
"""

poly_y_arg = """
    p: ``SymPoly``
        Symmetric polynomial in the squared coordinates (tag ``Y``).
"""

poly_x_arg = """
    p: ``SymPoly``
        Symmetric polynomial in the plain coordinates (tag ``X``).
"""

point_arg = """
    x: ``SamplePoint`` or sequence of ``float``
        Particle coordinates. The point must respect the safety margins
        around the singular surfaces of the Hamiltonian.
"""

report_returns = """
    Returns
    -------
    report: ``CheckReport``
        Summary of the check. ``report.passed`` is ``True`` if no violation
        was recorded.
"""
