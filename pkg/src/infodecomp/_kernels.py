"""Numeric hot kernels: entropy cores, penalized-descent optimizers, grid oracles.

Every kernel is written as a plain loop-based function and compiled with
numba's ``@njit`` when available.  Setting the environment variable
``INFODECOMP_NO_NUMBA=1`` (or numba being absent) selects the uncompiled
pure-Python/NumPy path; results are identical, only slower.  See
``benchmarks/bench_kernels.py`` for a comparison of the two lanes.
"""

import os

import numpy as np

USE_NUMBA = os.environ.get("INFODECOMP_NO_NUMBA", "").lower() not in ("1", "true", "yes")
if USE_NUMBA:
    try:
        from numba import njit as _njit
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

if USE_NUMBA:
    def _jit(fn):
        return _njit(cache=True)(fn)
else:
    def _jit(fn):
        return fn


# ---------------------------------------------------------------------------
# Shannon cores (base-2 throughout; 0 log 0 = 0)
# ---------------------------------------------------------------------------

@_jit
def entropy_bits(p):
    """Entropy in bits of a (flattened) nonnegative mass array."""
    q = p.ravel()
    h = 0.0
    for i in range(q.shape[0]):
        v = q[i]
        if v > 0.0:
            h -= v * np.log2(v)
    return h


@_jit
def mi_bits(j):
    """I(X;Y) in bits from a 2-d joint mass array."""
    nx, ny = j.shape
    px = np.zeros(nx)
    py = np.zeros(ny)
    for x in range(nx):
        for y in range(ny):
            px[x] += j[x, y]
            py[y] += j[x, y]
    return entropy_bits(px) + entropy_bits(py) - entropy_bits(j)


@_jit
def cmi_bits(j):
    """I(A;B|C) in bits from a 3-d joint mass array indexed (a, b, c)."""
    na, nb, nc = j.shape
    jac = np.zeros((na, nc))
    jbc = np.zeros((nb, nc))
    pc = np.zeros(nc)
    for a in range(na):
        for b in range(nb):
            for c in range(nc):
                v = j[a, b, c]
                jac[a, c] += v
                jbc[b, c] += v
                pc[c] += v
    return entropy_bits(jac) + entropy_bits(jbc) - entropy_bits(pc) - entropy_bits(j)


# ---------------------------------------------------------------------------
# Simplex helpers
# ---------------------------------------------------------------------------

@_jit
def _softmax_inplace(out, theta):
    """Write softmax(theta) into out (1-d, same length)."""
    n = theta.shape[0]
    m = theta[0]
    for i in range(1, n):
        if theta[i] > m:
            m = theta[i]
    s = 0.0
    for i in range(n):
        out[i] = np.exp(theta[i] - m)
        s += out[i]
    for i in range(n):
        out[i] /= s


@_jit
def _project_simplex_row(v):
    """Euclidean projection of a 1-d vector onto the probability simplex."""
    n = v.shape[0]
    # The projection is shift-invariant; centering on the max keeps the
    # running sums small so the (css - 1) term never falls below the ulp.
    m = v[0]
    for i in range(1, n):
        if v[i] > m:
            m = v[i]
    v = v - m
    u = np.sort(v)[::-1]
    css = 0.0
    rho = 0
    theta = 0.0
    for i in range(n):
        css += u[i]
        t = (css - 1.0) / (i + 1.0)
        if u[i] - t > 0.0:
            rho = i
            theta = t
    out = np.empty(n)
    for i in range(n):
        d = v[i] - theta
        out[i] = d if d > 0.0 else 0.0
    return out


# ---------------------------------------------------------------------------
# Wyner common information: min I(X_1..X_K; Q) with marginal-match penalty
# ---------------------------------------------------------------------------

@_jit
def _wyner_unpack(theta, dims, q_card, nmax):
    """Split a flat parameter vector into p(q) and padded rows p(x_k|q)."""
    k_vars = dims.shape[0]
    w = np.empty(q_card)
    _softmax_inplace(w, theta[:q_card])
    rows = np.zeros((k_vars, q_card, nmax))
    off = q_card
    for k in range(k_vars):
        nk = dims[k]
        for q in range(q_card):
            _softmax_inplace(rows[k, q, :nk], theta[off:off + nk])
            off += nk
    return w, rows


@_jit
def _wyner_eval(theta, target, dims, digits, q_card, nmax, lam):
    """Penalized Wyner objective; returns (obj, value_bits, marginal_dev)."""
    k_vars = dims.shape[0]
    prodd = target.shape[0]
    w, rows = _wyner_unpack(theta, dims, q_card, nmax)
    jq = np.empty((q_card, prodd))
    marg = np.zeros(prodd)
    for q in range(q_card):
        for f in range(prodd):
            v = w[q]
            for k in range(k_vars):
                v *= rows[k, q, digits[f, k]]
            jq[q, f] = v
            marg[f] += v
    value = entropy_bits(marg) + entropy_bits(w) - entropy_bits(jq)
    pen = 0.0
    dev = 0.0
    for f in range(prodd):
        d = marg[f] - target[f]
        pen += d * d
        ad = abs(d)
        if ad > dev:
            dev = ad
    return value + lam * pen, value, dev


@_jit
def _wyner_smart_theta(target, dims, digits, q_card, k_star, nparams):
    """Logits for the exactly feasible choice Q = X_{k_star} (one Q symbol
    per letter of that variable, extra symbols starved)."""
    k_vars = dims.shape[0]
    prodd = target.shape[0]
    nk = dims[k_star]
    theta = np.zeros(nparams)
    w = np.full(q_card, 1e-9)
    for f in range(prodd):
        w[digits[f, k_star]] += target[f]
    for q in range(q_card):
        theta[q] = np.log(w[q])
    off = q_card
    for k in range(k_vars):
        dk = dims[k]
        for q in range(q_card):
            if k == k_star:
                for v in range(dk):
                    theta[off + v] = 6.0 if v == q else -6.0
            elif q < nk:
                cond = np.full(dk, 1e-9)
                tot = 1e-9
                for f in range(prodd):
                    if digits[f, k_star] == q:
                        cond[digits[f, k]] += target[f]
                        tot += target[f]
                for v in range(dk):
                    theta[off + v] = np.log(cond[v] / tot)
            off += dk
    return theta


@_jit
def wyner_descent(target, dims, digits, q_card, seed, n_restarts,
                  iters_per_stage, grad_step, conv_tol):
    """Multi-restart penalized gradient descent for the Wyner upper bound.

    Returns (value, dev, joint) where joint is the best achieving
    p(q, x_1..x_K) of shape (q_card, prod(dims)).
    """
    k_vars = dims.shape[0]
    prodd = target.shape[0]
    nmax = 0
    for k in range(k_vars):
        if dims[k] > nmax:
            nmax = dims[k]
    nparams = q_card
    for k in range(k_vars):
        nparams += q_card * dims[k]
    # Penalty equilibrium leaves a marginal deviation ~ grad/lambda, so the
    # ladder must reach well past 1/FEAS_TOL for a certifiable bound.
    lams = np.array([1e2, 1e3, 1e4, 1e5, 1e6, 1e8, 1e10])

    best_value = np.inf
    best_dev = np.inf
    best_joint = np.zeros((q_card, prodd))
    for r in range(n_restarts):
        np.random.seed(seed + r)
        theta = 0.5 * np.random.randn(nparams)
        # the first restarts open from the feasible choices Q = X_k
        if r < k_vars and dims[r] <= q_card:
            theta = _wyner_smart_theta(target, dims, digits, q_card, r, nparams)
            theta += 0.01 * np.random.randn(nparams)
        grad = np.empty(nparams)
        for s in range(lams.shape[0]):
            lam = lams[s]
            # curvature grows with lam; scale the opening step down to match
            step = 2.5 / np.sqrt(lam)
            obj, _, _ = _wyner_eval(theta, target, dims, digits, q_card, nmax, lam)
            obj_mark = obj
            for it in range(iters_per_stage):
                for i in range(nparams):
                    t0 = theta[i]
                    theta[i] = t0 + grad_step
                    f1, _, _ = _wyner_eval(theta, target, dims, digits, q_card, nmax, lam)
                    theta[i] = t0 - grad_step
                    f2, _, _ = _wyner_eval(theta, target, dims, digits, q_card, nmax, lam)
                    theta[i] = t0
                    grad[i] = (f1 - f2) / (2.0 * grad_step)
                improved = False
                for _bt in range(30):
                    cand = theta - step * grad
                    cobj, _, _ = _wyner_eval(cand, target, dims, digits, q_card, nmax, lam)
                    if cobj < obj:
                        theta = cand
                        obj = cobj
                        step *= 1.3
                        improved = True
                        break
                    step *= 0.5
                if not improved:
                    break
                if (it + 1) % 50 == 0:
                    if obj_mark - obj < conv_tol:
                        break
                    obj_mark = obj
        _, value, dev = _wyner_eval(theta, target, dims, digits, q_card, nmax, lams[-1])
        feas = dev <= 1e-6
        best_feas = best_dev <= 1e-6
        take = False
        if feas and not best_feas:
            take = True
        elif feas == best_feas and value < best_value:
            take = True
        if take:
            best_value = value
            best_dev = dev
            w, rows = _wyner_unpack(theta, dims, q_card, nmax)
            for q in range(q_card):
                for f in range(prodd):
                    v = w[q]
                    for k in range(k_vars):
                        v *= rows[k, q, digits[f, k]]
                    best_joint[q, f] = v
    return best_value, best_dev, best_joint


# ---------------------------------------------------------------------------
# Minimum assisted common information:
# min over p(q|x,y) of I(Y;Q|X) + I(X;Q|Y) + I(X;Y|Q)
# ---------------------------------------------------------------------------

@_jit
def _cmin_eval(theta, target, q_card):
    """C_min objective from softmax-parameterized p(q|x,y)."""
    nx, ny = target.shape
    j3 = np.empty((nx, ny, q_card))
    row = np.empty(q_card)
    for x in range(nx):
        for y in range(ny):
            off = (x * ny + y) * q_card
            _softmax_inplace(row, theta[off:off + q_card])
            for q in range(q_card):
                j3[x, y, q] = target[x, y] * row[q]
    jxq = np.zeros((nx, q_card))
    jyq = np.zeros((ny, q_card))
    pq = np.zeros(q_card)
    px = np.zeros(nx)
    py = np.zeros(ny)
    for x in range(nx):
        for y in range(ny):
            for q in range(q_card):
                v = j3[x, y, q]
                jxq[x, q] += v
                jyq[y, q] += v
                pq[q] += v
            px[x] += target[x, y]
            py[y] += target[x, y]
    hxy = entropy_bits(target)
    hxq = entropy_bits(jxq)
    hyq = entropy_bits(jyq)
    hxyq = entropy_bits(j3)
    i_yq_x = hxy + hxq - entropy_bits(px) - hxyq
    i_xq_y = hxy + hyq - entropy_bits(py) - hxyq
    i_xy_q = hxq + hyq - entropy_bits(pq) - hxyq
    return i_yq_x + i_xq_y + i_xy_q


@_jit
def cmin_descent(target, q_card, seed, n_restarts, max_iters, grad_step, conv_tol):
    """Multi-restart descent for C_min; returns (value, posterior p(q|x,y))."""
    nx, ny = target.shape
    nparams = nx * ny * q_card
    best_value = np.inf
    best_theta = np.zeros(nparams)
    for r in range(n_restarts):
        np.random.seed(seed + r)
        theta = 0.5 * np.random.randn(nparams)
        grad = np.empty(nparams)
        obj = _cmin_eval(theta, target, q_card)
        obj_mark = obj
        step = 0.25
        for it in range(max_iters):
            for i in range(nparams):
                t0 = theta[i]
                theta[i] = t0 + grad_step
                f1 = _cmin_eval(theta, target, q_card)
                theta[i] = t0 - grad_step
                f2 = _cmin_eval(theta, target, q_card)
                theta[i] = t0
                grad[i] = (f1 - f2) / (2.0 * grad_step)
            improved = False
            for _bt in range(30):
                cand = theta - step * grad
                cobj = _cmin_eval(cand, target, q_card)
                if cobj < obj:
                    theta = cand
                    obj = cobj
                    step *= 1.3
                    improved = True
                    break
                step *= 0.5
            if not improved:
                break
            if (it + 1) % 50 == 0:
                if obj_mark - obj < conv_tol:
                    break
                obj_mark = obj
        if obj < best_value:
            best_value = obj
            best_theta = theta.copy()
    rows = np.empty((nx * ny, q_card))
    for c in range(nx * ny):
        _softmax_inplace(rows[c], best_theta[c * q_card:(c + 1) * q_card])
    return best_value, rows


# ---------------------------------------------------------------------------
# Intrinsic conditional information:
# min over channels p(y'|y) of I(X1;X2|Y')
# ---------------------------------------------------------------------------

@_jit
def channel_cmi(target3, ch):
    """I(X1;X2|Y') after pushing axis 2 of target3 through channel ch."""
    n1, n2, ny = target3.shape
    ypc = ch.shape[1]
    j = np.zeros((n1, n2, ypc))
    for a in range(n1):
        for b in range(n2):
            for y in range(ny):
                v = target3[a, b, y]
                if v > 0.0:
                    for t in range(ypc):
                        j[a, b, t] += v * ch[y, t]
    return cmi_bits(j)


@_jit
def _intrinsic_eval(theta, target3, ypc):
    n1, n2, ny = target3.shape
    ch = np.empty((ny, ypc))
    for y in range(ny):
        _softmax_inplace(ch[y], theta[y * ypc:(y + 1) * ypc])
    return channel_cmi(target3, ch)


@_jit
def intrinsic_descent(target3, ypc, seed, n_restarts, max_iters, grad_step, conv_tol):
    """Multi-restart descent over channels p(y'|y); returns (value, channel)."""
    n1, n2, ny = target3.shape
    nparams = ny * ypc
    best_value = np.inf
    best_theta = np.zeros(nparams)
    for r in range(n_restarts):
        np.random.seed(seed + r)
        theta = 0.5 * np.random.randn(nparams)
        grad = np.empty(nparams)
        obj = _intrinsic_eval(theta, target3, ypc)
        obj_mark = obj
        step = 0.25
        for it in range(max_iters):
            for i in range(nparams):
                t0 = theta[i]
                theta[i] = t0 + grad_step
                f1 = _intrinsic_eval(theta, target3, ypc)
                theta[i] = t0 - grad_step
                f2 = _intrinsic_eval(theta, target3, ypc)
                theta[i] = t0
                grad[i] = (f1 - f2) / (2.0 * grad_step)
            improved = False
            for _bt in range(30):
                cand = theta - step * grad
                cobj = _intrinsic_eval(cand, target3, ypc)
                if cobj < obj:
                    theta = cand
                    obj = cobj
                    step *= 1.3
                    improved = True
                    break
                step *= 0.5
            if not improved:
                break
            if (it + 1) % 50 == 0:
                if obj_mark - obj < conv_tol:
                    break
                obj_mark = obj
        if obj < best_value:
            best_value = obj
            best_theta = theta.copy()
    ch = np.empty((ny, ypc))
    for y in range(ny):
        _softmax_inplace(ch[y], best_theta[y * ypc:(y + 1) * ypc])
    return best_value, ch


# ---------------------------------------------------------------------------
# Conditional Gacs-Korner:
# max over p(q|y,x2) of I(YX1;Q|X2) subject to I(Y;Q|X1X2) -> 0
# ---------------------------------------------------------------------------

@_jit
def condgk_terms(target3, rows):
    """(I(YX1;Q|X2), I(Y;Q|X1X2)) for target3 indexed (y,x1,x2), rows p(q|y,x2)."""
    ny, n1, n2 = target3.shape
    q_card = rows.shape[1]
    j4 = np.zeros((ny, n1, n2, q_card))
    for y in range(ny):
        for a in range(n1):
            for b in range(n2):
                v = target3[y, a, b]
                if v > 0.0:
                    c = y * n2 + b
                    for q in range(q_card):
                        j4[y, a, b, q] = v * rows[c, q]
    jqb = np.zeros((q_card, n2))
    pb = np.zeros(n2)
    jab = np.zeros((n1, n2))
    jabq = np.zeros((n1, n2, q_card))
    for y in range(ny):
        for a in range(n1):
            for b in range(n2):
                v = target3[y, a, b]
                pb[b] += v
                jab[a, b] += v
                for q in range(q_card):
                    jqb[q, b] += j4[y, a, b, q]
                    jabq[a, b, q] += j4[y, a, b, q]
    h_full = entropy_bits(j4)
    h_yab = entropy_bits(target3)
    # I(YX1;Q|X2) = H(YX1X2) + H(QX2) - H(X2) - H(YX1X2Q)
    i_main = h_yab + entropy_bits(jqb) - entropy_bits(pb) - h_full
    # I(Y;Q|X1X2) = H(YX1X2) + H(X1X2Q) - H(X1X2) - H(YX1X2Q)
    i_feas = h_yab + entropy_bits(jabq) - entropy_bits(jab) - h_full
    return i_main, i_feas


@_jit
def _condgk_eval(theta, target3, q_card, lam):
    ny, n1, n2 = target3.shape
    rows = np.empty((ny * n2, q_card))
    for c in range(ny * n2):
        _softmax_inplace(rows[c], theta[c * q_card:(c + 1) * q_card])
    i_main, i_feas = condgk_terms(target3, rows)
    return -i_main + lam * i_feas, i_main, i_feas


@_jit
def condgk_descent(target3, q_card, seed, n_restarts, iters_per_stage,
                   grad_step, conv_tol):
    """Penalized ascent for conditional GK; returns (value, feas, rows p(q|y,x2))."""
    ny, n1, n2 = target3.shape
    nparams = ny * n2 * q_card
    lams = np.array([1e2, 1e3, 1e4, 1e5, 1e6])
    best_value = -np.inf
    best_feas = np.inf
    best_theta = np.zeros(nparams)
    for r in range(n_restarts):
        np.random.seed(seed + r)
        theta = 0.5 * np.random.randn(nparams)
        grad = np.empty(nparams)
        for s in range(lams.shape[0]):
            lam = lams[s]
            step = 0.25
            obj, _, _ = _condgk_eval(theta, target3, q_card, lam)
            obj_mark = obj
            for it in range(iters_per_stage):
                for i in range(nparams):
                    t0 = theta[i]
                    theta[i] = t0 + grad_step
                    f1, _, _ = _condgk_eval(theta, target3, q_card, lam)
                    theta[i] = t0 - grad_step
                    f2, _, _ = _condgk_eval(theta, target3, q_card, lam)
                    theta[i] = t0
                    grad[i] = (f1 - f2) / (2.0 * grad_step)
                improved = False
                for _bt in range(30):
                    cand = theta - step * grad
                    cobj, _, _ = _condgk_eval(cand, target3, q_card, lam)
                    if cobj < obj:
                        theta = cand
                        obj = cobj
                        step *= 1.3
                        improved = True
                        break
                    step *= 0.5
                if not improved:
                    break
                if (it + 1) % 50 == 0:
                    if obj_mark - obj < conv_tol:
                        break
                    obj_mark = obj
        _, value, feas = _condgk_eval(theta, target3, q_card, lams[-1])
        ok = feas <= 1e-6
        best_ok = best_feas <= 1e-6
        take = False
        if ok and not best_ok:
            take = True
        elif ok == best_ok and value > best_value:
            take = True
        if take:
            best_value = value
            best_feas = feas
            best_theta = theta.copy()
    rows = np.empty((ny * n2, q_card))
    for c in range(ny * n2):
        _softmax_inplace(rows[c], best_theta[c * q_card:(c + 1) * q_card])
    return best_value, best_feas, rows


# ---------------------------------------------------------------------------
# Conditional information bottleneck: min I(Y;T) - beta * I(X1;T|X2)
# ---------------------------------------------------------------------------

@_jit
def cib_objective(target3, enc, beta):
    """(objective, compression, relevance) for target3 (x1,x2,y), encoder p(t|y)."""
    n1, n2, ny = target3.shape
    t_card = enc.shape[1]
    py = np.zeros(ny)
    for a in range(n1):
        for b in range(n2):
            for y in range(ny):
                py[y] += target3[a, b, y]
    jyt = np.zeros((ny, t_card))
    for y in range(ny):
        for t in range(t_card):
            v = py[y] * enc[y, t]
            jyt[y, t] = v if v > 0.0 else 0.0
    compression = mi_bits(jyt)
    jabt = np.zeros((n1, n2, t_card))
    for a in range(n1):
        for b in range(n2):
            for y in range(ny):
                v = target3[a, b, y]
                if v > 0.0:
                    for t in range(t_card):
                        e = enc[y, t]
                        if e > 0.0:
                            jabt[a, b, t] += v * e
    # I(X1;T|X2) with axes (x1, t | x2)
    j_rot = np.zeros((n1, t_card, n2))
    for a in range(n1):
        for b in range(n2):
            for t in range(t_card):
                j_rot[a, t, b] = jabt[a, b, t]
    relevance = cmi_bits(j_rot)
    return compression - beta * relevance, compression, relevance


@_jit
def cib_descent(target3, enc0, beta, max_iters, grad_step):
    """Monotone projected gradient descent from encoder enc0.

    Returns (enc, trace, n_trace, converged) with trace the accepted
    objective values (non-increasing by construction).
    """
    ny, t_card = enc0.shape
    enc = enc0.copy()
    trace = np.empty(max_iters + 1)
    obj, _, _ = cib_objective(target3, enc, beta)
    trace[0] = obj
    n_trace = 1
    step = 0.1
    grad = np.empty((ny, t_card))
    converged = False
    for it in range(max_iters):
        for y in range(ny):
            for t in range(t_card):
                e0 = enc[y, t]
                hi = grad_step
                lo = grad_step if e0 - grad_step >= 0.0 else e0
                enc[y, t] = e0 + hi
                f1, _, _ = cib_objective(target3, enc, beta)
                enc[y, t] = e0 - lo
                f2, _, _ = cib_objective(target3, enc, beta)
                enc[y, t] = e0
                grad[y, t] = (f1 - f2) / (hi + lo)
        accepted = False
        for _bt in range(40):
            cand = np.empty((ny, t_card))
            for y in range(ny):
                cand[y] = _project_simplex_row(enc[y] - step * grad[y])
            cobj, _, _ = cib_objective(target3, cand, beta)
            if cobj < obj:
                enc = cand
                obj = cobj
                trace[n_trace] = obj
                n_trace += 1
                step *= 1.3
                if step > 1e3:
                    step = 1e3
                accepted = True
                break
            step *= 0.5
        if not accepted:
            converged = True
            break
    return enc, trace, n_trace, converged


# ---------------------------------------------------------------------------
# Union information: convex minimization of I(X1X2;Y') over the polytope of
# joints with both (Xi,Y') pairwise marginals fixed
# ---------------------------------------------------------------------------

@_jit
def union_objective(qflat, n1, n2, ny):
    """I(X1X2;Y') of a flattened (x1,x2,y') mass vector (negatives ignored)."""
    j = np.zeros((n1 * n2, ny))
    for a in range(n1):
        for b in range(n2):
            for y in range(ny):
                v = qflat[(a * n2 + b) * ny + y]
                if v > 0.0:
                    j[a * n2 + b, y] = v
    return mi_bits(j)


@_jit
def _union_project(qflat, amat, gmat, bvec, rounds):
    """Alternate affine projection (marginal constraints) and clipping."""
    x = qflat.copy()
    for _ in range(rounds):
        resid = np.dot(amat, x) - bvec
        x = x - np.dot(gmat, resid)
        for i in range(x.shape[0]):
            if x[i] < 0.0:
                x[i] = 0.0
    resid = np.dot(amat, x) - bvec
    x = x - np.dot(gmat, resid)
    return x


@_jit
def union_descent(q0, n1, n2, ny, amat, gmat, bvec, max_iters, grad_step):
    """Monotone projected gradient descent from feasible start q0.

    Returns (value, qflat, converged).
    """
    n = q0.shape[0]
    x = _union_project(q0, amat, gmat, bvec, 50)
    obj = union_objective(x, n1, n2, ny)
    grad = np.empty(n)
    step = 0.1
    converged = False
    for it in range(max_iters):
        for i in range(n):
            v0 = x[i]
            hi = grad_step
            lo = grad_step if v0 - grad_step >= 0.0 else v0
            x[i] = v0 + hi
            f1 = union_objective(x, n1, n2, ny)
            x[i] = v0 - lo
            f2 = union_objective(x, n1, n2, ny)
            x[i] = v0
            grad[i] = (f1 - f2) / (hi + lo)
        accepted = False
        for _bt in range(40):
            cand = _union_project(x - step * grad, amat, gmat, bvec, 30)
            cobj = union_objective(cand, n1, n2, ny)
            if cobj < obj:
                x = cand
                obj = cobj
                step *= 1.3
                if step > 1e3:
                    step = 1e3
                accepted = True
                break
            step *= 0.5
        if not accepted:
            converged = True
            break
    # long alternating-projection polish: POCS converges to a point in the
    # intersection of the affine set and the nonnegative orthant
    x = _union_project(x, amat, gmat, bvec, 4000)
    for i in range(n):
        if x[i] < 0.0:
            x[i] = 0.0
    obj = union_objective(x, n1, n2, ny)
    return obj, x, converged


# ---------------------------------------------------------------------------
# Exhaustive grid oracles (independent cross-checks for the optimizers)
# ---------------------------------------------------------------------------

@_jit
def wyner_grid_2x2(target, res):
    """Exhaustive q_card=2 oracle for a 2x2 pmf.

    The feasible mixtures w*(a x b) + (1-w)*(c x d) matching the target
    exactly form a 2-parameter family in (w, a0): the marginal constraints
    fix c0, d0 and the remaining joint-cell constraint fixes b0 in closed
    form.  Scans that family on a grid and returns min I(XY;Q).
    """
    px0 = target[0, 0] + target[0, 1]
    py0 = target[0, 0] + target[1, 0]
    p00 = target[0, 0]
    best = np.inf
    nw = int(1.0 / res) - 1
    na = int(1.0 / res) + 1
    for iw in range(1, nw + 1):
        w = iw * res
        for ia in range(na):
            a0 = ia * res
            den = w * (a0 - px0)
            if abs(den) < 1e-12:
                continue
            b0 = (p00 * (1.0 - w) - px0 * py0 + w * a0 * py0) / den
            if b0 < 0.0 or b0 > 1.0:
                continue
            c0 = (px0 - w * a0) / (1.0 - w)
            d0 = (py0 - w * b0) / (1.0 - w)
            if c0 < 0.0 or c0 > 1.0 or d0 < 0.0 or d0 > 1.0:
                continue
            jq = np.empty(8)
            jq[0] = w * a0 * b0
            jq[1] = w * a0 * (1.0 - b0)
            jq[2] = w * (1.0 - a0) * b0
            jq[3] = w * (1.0 - a0) * (1.0 - b0)
            jq[4] = (1.0 - w) * c0 * d0
            jq[5] = (1.0 - w) * c0 * (1.0 - d0)
            jq[6] = (1.0 - w) * (1.0 - c0) * d0
            jq[7] = (1.0 - w) * (1.0 - c0) * (1.0 - d0)
            hw = 0.0
            if w > 0.0:
                hw -= w * np.log2(w)
            if w < 1.0:
                hw -= (1.0 - w) * np.log2(1.0 - w)
            value = entropy_bits(target) + hw - entropy_bits(jq)
            if value < best:
                best = value
    return best


@_jit
def cmin_grid_2x2(target, res):
    """Exhaustive q_card=2 oracle for C_min on a 2x2 pmf: grid over p(q=0|x,y)."""
    n = int(1.0 / res) + 1
    best = np.inf
    j3 = np.empty((2, 2, 2))
    for i00 in range(n):
        g00 = i00 * res
        for i01 in range(n):
            g01 = i01 * res
            for i10 in range(n):
                g10 = i10 * res
                for i11 in range(n):
                    g11 = i11 * res
                    j3[0, 0, 0] = target[0, 0] * g00
                    j3[0, 0, 1] = target[0, 0] * (1.0 - g00)
                    j3[0, 1, 0] = target[0, 1] * g01
                    j3[0, 1, 1] = target[0, 1] * (1.0 - g01)
                    j3[1, 0, 0] = target[1, 0] * g10
                    j3[1, 0, 1] = target[1, 0] * (1.0 - g10)
                    j3[1, 1, 0] = target[1, 1] * g11
                    j3[1, 1, 1] = target[1, 1] * (1.0 - g11)
                    v = _cmin_terms(target, j3)
                    if v < best:
                        best = v
    return best


@_jit
def _cmin_terms(target, j3):
    nx, ny = target.shape
    q_card = j3.shape[2]
    jxq = np.zeros((nx, q_card))
    jyq = np.zeros((ny, q_card))
    pq = np.zeros(q_card)
    px = np.zeros(nx)
    py = np.zeros(ny)
    for x in range(nx):
        for y in range(ny):
            px[x] += target[x, y]
            py[y] += target[x, y]
            for q in range(q_card):
                v = j3[x, y, q]
                jxq[x, q] += v
                jyq[y, q] += v
                pq[q] += v
    hxy = entropy_bits(target)
    hxq = entropy_bits(jxq)
    hyq = entropy_bits(jyq)
    hxyq = entropy_bits(j3)
    return (hxy + hxq - entropy_bits(px) - hxyq
            + hxy + hyq - entropy_bits(py) - hxyq
            + hxq + hyq - entropy_bits(pq) - hxyq)


@_jit
def intrinsic_grid_binary(target3, res):
    """Grid oracle for intrinsic information with binary Y and binary Y'."""
    n = int(1.0 / res) + 1
    best = np.inf
    ch = np.empty((2, 2))
    for i0 in range(n):
        for i1 in range(n):
            ch[0, 0] = i0 * res
            ch[0, 1] = 1.0 - ch[0, 0]
            ch[1, 0] = i1 * res
            ch[1, 1] = 1.0 - ch[1, 0]
            v = channel_cmi(target3, ch)
            if v < best:
                best = v
    return best


@_jit
def union_grid_2x2x2(target3, res):
    """Exhaustive oracle for union information on a 2x2x2 pmf.

    For fixed pairwise marginals, the feasible joints have one free
    parameter per y' (the (0,0) block cell); scan both on a grid.
    """
    r = np.zeros((2, 2))  # r[x1, y'] target (X1,Y) marginal
    c = np.zeros((2, 2))  # c[x2, y']
    for a in range(2):
        for b in range(2):
            for y in range(2):
                r[a, y] += target3[a, b, y]
                c[b, y] += target3[a, b, y]
    best = np.inf
    q = np.empty(8)
    lo = np.empty(2)
    hi = np.empty(2)
    for y in range(2):
        s = r[0, y] + r[1, y]
        l = r[0, y] + c[0, y] - s
        if l < 0.0:
            l = 0.0
        h = r[0, y] if r[0, y] < c[0, y] else c[0, y]
        lo[y] = l
        hi[y] = h
    n0 = int((hi[0] - lo[0]) / res) + 1
    n1 = int((hi[1] - lo[1]) / res) + 1
    for i0 in range(n0 + 1):
        t0 = lo[0] + i0 * res
        if t0 > hi[0]:
            t0 = hi[0]
        for i1 in range(n1 + 1):
            t1 = lo[1] + i1 * res
            if t1 > hi[1]:
                t1 = hi[1]
            s0 = r[0, 0] + r[1, 0]
            s1 = r[0, 1] + r[1, 1]
            q[0] = t0
            q[1] = t1
            q[2] = r[0, 0] - t0
            q[3] = r[0, 1] - t1
            q[4] = c[0, 0] - t0
            q[5] = c[0, 1] - t1
            q[6] = s0 - r[0, 0] - c[0, 0] + t0
            q[7] = s1 - r[0, 1] - c[0, 1] + t1
            v = union_objective(q, 2, 2, 2)
            if v < best:
                best = v
    return best
