#!/usr/bin/env python3
"""Generate the bundled robot model files and scenario start configurations.

Standalone chain composition in numpy. The printed end-effector positions
are frozen into the C++ kinematics tests, so this script must stay
independent of the C++ library.
"""
import json
import os
import numpy as np

OUT = os.path.join(os.path.dirname(__file__), "..", "data", "models")


def rot_x(a):
    c, s = np.cos(a), np.sin(a)
    return np.array([[1, 0, 0], [0, c, -s], [0, s, c]])


def rot_z(a):
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]])


def rpy_matrix(r, p, y):
    cr, sr = np.cos(r), np.sin(r)
    cp, sp = np.cos(p), np.sin(p)
    cy, sy = np.cos(y), np.sin(y)
    rz = np.array([[cy, -sy, 0], [sy, cy, 0], [0, 0, 1]])
    ry = np.array([[cp, 0, sp], [0, 1, 0], [-sp, 0, cp]])
    rx = np.array([[1, 0, 0], [0, cr, -sr], [0, sr, cr]])
    return rz @ ry @ rx


def hom(R, t):
    T = np.eye(4)
    T[:3, :3] = R
    T[:3, 3] = t
    return T


# Seven-joint chain described by (a, alpha, d) triples: the fixed transform
# preceding joint i is RotX(alpha) * TransX(a) * TransZ(d); the joint then
# rotates about the local z axis.
CHAIN = [
    (0.0, 0.0, 0.35),
    (0.0, -np.pi / 2, 0.0),
    (0.0, np.pi / 2, 0.37),
    (0.0, np.pi / 2, 0.0),
    (0.0, -np.pi / 2, 0.36),
    (0.0, -np.pi / 2, 0.0),
    (0.0, np.pi / 2, 0.0),
]
EE_OFFSET = np.array([0.0, 0.0, 0.12])
LIMITS = [(-2.9, 2.9), (-2.0, 2.0), (-2.9, 2.9), (-2.0, 2.0),
          (-2.9, 2.9), (-2.0, 2.0), (-2.9, 2.9)]
VEL_LIMITS = [2.5] * 7
RADII = [0.09, 0.07, 0.07, 0.06, 0.06, 0.05, 0.05]


def fixed_transform(a, alpha, d):
    R = rot_x(alpha)
    t = R @ np.array([a, 0.0, d])
    return hom(R, t)


def fk(q):
    frames = []
    T = np.eye(4)
    for (a, alpha, d), qi in zip(CHAIN, q):
        T = T @ fixed_transform(a, alpha, d) @ hom(rot_z(qi), np.zeros(3))
        frames.append(T.copy())
    ee = T @ hom(np.eye(3), EE_OFFSET)
    return frames, ee


def fd_jacobian(q, h=1e-7):
    J = np.zeros((3, 7))
    for i in range(7):
        qp = q.copy(); qp[i] += h
        qm = q.copy(); qm[i] -= h
        J[:, i] = (fk(qp)[1][:3, 3] - fk(qm)[1][:3, 3]) / (2 * h)
    return J


def ik(target, seed, iters=2000):
    lo = np.array([l[0] for l in LIMITS])
    hi = np.array([l[1] for l in LIMITS])
    comfort = seed.copy()
    q = seed.copy()
    for _ in range(iters):
        _, ee = fk(q)
        err = target - ee[:3, 3]
        J = fd_jacobian(q)
        Jp = J.T @ np.linalg.solve(J @ J.T + 1e-6 * np.eye(3), np.eye(3))
        dq = Jp @ err + 0.05 * (np.eye(7) - Jp @ J) @ (comfort - q)
        q = np.clip(q + 0.5 * dq, lo, hi)
        if np.linalg.norm(err) < 1e-13:
            break
    return q, np.linalg.norm(target - fk(q)[1][:3, 3])


def snap(v, eps=1e-12):
    return 0.0 if abs(v) < eps else round(float(v), 12)


def capsules():
    caps = []
    for j in range(7):
        if j + 1 < 7:
            a, alpha, d = CHAIN[j + 1]
            tip = fixed_transform(a, alpha, d)[:3, 3]
        else:
            tip = EE_OFFSET
        caps.append({"joint": j, "p0": [0.0, 0.0, 0.0],
                     "p1": [snap(v) for v in tip], "radius": RADII[j]})
    return caps


def write_7dof():
    joints = []
    for a, alpha, d in CHAIN:
        T = fixed_transform(a, alpha, d)
        joints.append({
            "axis": [0.0, 0.0, 1.0],
            "translation": [snap(v) for v in T[:3, 3]],
            "rpy": [float(alpha), 0.0, 0.0],
        })
    model = {
        "schema": 1,
        "name": "redundant_7dof",
        "joints": joints,
        "joint_limits": [list(l) for l in LIMITS],
        "velocity_limits": VEL_LIMITS,
        "ee": {"translation": [0.0, 0.0, 0.12], "rpy": [0.0, 0.0, 0.0]},
        "capsules": capsules(),
    }
    os.makedirs(OUT, exist_ok=True)
    with open(os.path.join(OUT, "redundant_7dof.json"), "w") as f:
        json.dump(model, f, indent=2)
        f.write("\n")


def write_planar():
    model = {
        "schema": 1,
        "name": "planar_2link",
        "joints": [
            {"axis": [0.0, 0.0, 1.0], "translation": [0.0, 0.0, 0.0],
             "rpy": [0.0, 0.0, 0.0]},
            {"axis": [0.0, 0.0, 1.0], "translation": [1.0, 0.0, 0.0],
             "rpy": [0.0, 0.0, 0.0]},
        ],
        "joint_limits": [[-3.1, 3.1], [-3.1, 3.1]],
        "velocity_limits": [2.0, 2.0],
        "ee": {"translation": [1.0, 0.0, 0.0], "rpy": [0.0, 0.0, 0.0]},
        "capsules": [
            {"joint": 0, "p0": [0.0, 0.0, 0.0], "p1": [1.0, 0.0, 0.0],
             "radius": 0.05},
            {"joint": 1, "p0": [0.0, 0.0, 0.0], "p1": [1.0, 0.0, 0.0],
             "radius": 0.05},
        ],
    }
    with open(os.path.join(OUT, "planar_2link.json"), "w") as f:
        json.dump(model, f, indent=2)
        f.write("\n")


def main():
    write_7dof()
    write_planar()

    np.set_printoptions(precision=15, suppress=False)
    zero = np.zeros(7)
    _, ee0 = fk(zero)
    print("EE at q=0:", list(ee0[:3, 3]))

    q_test = np.array([0.3, -0.4, 0.5, -0.6, 0.2, 0.4, -0.3])
    _, ee_t = fk(q_test)
    print("EE at q_test:", list(ee_t[:3, 3]))

    seed = np.array([0.0, 0.8, 0.0, -1.4, 0.0, -0.8, 0.0])
    circle_start = np.array([0.5, 0.0, 0.5])
    qc, rc = ik(circle_start, seed)
    print("circle q0 (resid %.2e):" % rc, json.dumps([round(v, 12) for v in qc]))

    line_start = np.array([0.4, 0.5, 0.5])
    ql, rl = ik(line_start, seed)
    print("line q0 (resid %.2e):" % rl, json.dumps([round(v, 12) for v in ql]))


if __name__ == "__main__":
    main()
