#pragma once

namespace graspgeom {

// Central tolerance record. Every numeric guard in the library reads from one
// of these fields; defaults match the documented contracts.
struct Tolerances {
    double unit_norm = 1e-9;               // |norm - 1| bound for unit vectors and rotations
    double ray_epsilon = 1e-6;             // min raycast hit distance (m), skips the originating face
    double degenerate_axis = 1e-9;         // solve_ny: min sqrt(1 - (n_x.n)^2)
    double angle_slack = 1e-9;             // solve_ny: feasibility slack on |cos(phi)| <= s
    double branch_tie = 1e-12;             // solve_ny: tie margin before the "+" branch wins
    double min_contact_separation = 1e-6;  // contact pairs closer than this are degenerate (m)
    double orthogonal_frame = 1e-6;        // contactnet: max |n_x . n_z|
    double d_vis = 5e-3;                   // annotation visibility distance (m)
    double w_max = 0.08;                   // gripper stroke upper bound (m)
};

}  // namespace graspgeom
