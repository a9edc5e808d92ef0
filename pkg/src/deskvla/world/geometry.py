"""World geometry constants shared by scene sampling, simulation, and rendering."""

TABLE = 12.0  # square table side, world units
MARGIN = 1.4  # keep-out border for object placement

CANVAS_PX = 96
PX_PER_UNIT = CANVAS_PX / TABLE

BASE_START = (6.0, 1.5)
BASE_HEADING_START = 1.5707963267948966  # facing up-table
EFFECTOR_OFFSET = (0.0, 1.5)  # initial effector position relative to the base
REACH = 8.5  # max effector distance from the base
RIGHT_ARM_OFFSET = (2.0, 1.0)  # parked right effector, base-relative

R_GRASP = 0.8  # grasp radius; also the approach-contact radius for metrics
CONTAINER_HALF = 1.3
OVERLAP_TOL = 0.3

DT = 1.0
V_EFF_MAX = 0.8  # effector speed limit per step
V_BASE_MAX = 0.5
W_BASE_MAX = 0.6

WRIST_SPAN = 8.0  # wrist-view crop extent in world units
