"""Python interface to the Gauss-Bonnet-Chern verification library."""

from _pygbc import (
    Expression,
    Geometry,
    epsilon_order_study,
    euler_characteristic,
    euler_form,
    heat_diag_mc,
    heat_profile,
    ladder_check_mc,
    load_geometry,
    mckean_singer,
    normal_coordinate_slope,
    parse_expression,
    pfaffian,
    pfaffian_berezin,
    preset_names,
    run_acceptance,
    scalar_curvature,
    weitzenbock_slope,
)

__all__ = [
    "Expression",
    "Geometry",
    "epsilon_order_study",
    "euler_characteristic",
    "euler_form",
    "heat_diag_mc",
    "heat_profile",
    "ladder_check_mc",
    "load_geometry",
    "mckean_singer",
    "normal_coordinate_slope",
    "parse_expression",
    "pfaffian",
    "pfaffian_berezin",
    "preset_names",
    "run_acceptance",
    "scalar_curvature",
    "weitzenbock_slope",
]
