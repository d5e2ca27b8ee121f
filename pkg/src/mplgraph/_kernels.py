"""Compiled inner loops for the pseudo-likelihood chains.

Everything here operates on plain arrays: the Gram matrix U, a boolean
adjacency matrix, a per-node log score vector, and a p x p table `delta` whose
entry [h, a] holds the node-h log score with node a toggled in/out of nb(h).
Flipping edge (i, j) invalidates only rows i and j of `delta`, which is what
makes the 2p-3 incremental rate update cheap.

Determinants are computed by a direct Cholesky factorization of the extracted
submatrix on every evaluation; a failed factorization or an overlarge
neighborhood yields -inf (a zero rate) rather than an error, so the chain
stays well defined near the n >= p_h + 1 boundary.
"""

import math

import numpy as np
from numba import njit

LOG_PI = math.log(math.pi)


@njit(cache=True)
def _chol_logdet(a):
    """In-place Cholesky of a small symmetric matrix; returns log det or NaN."""
    m = a.shape[0]
    ld = 0.0
    for j in range(m):
        s = a[j, j]
        for k in range(j):
            s -= a[j, k] * a[j, k]
        if s <= 0.0 or not np.isfinite(s):
            return np.nan
        ajj = math.sqrt(s)
        a[j, j] = ajj
        ld += math.log(ajj)
        for i in range(j + 1, m):
            t = a[i, j]
            for k in range(j):
                t -= a[i, k] * a[j, k]
            a[i, j] = t / ajj
    return 2.0 * ld


@njit(cache=True)
def _node_logmpl_idx(U, n, idx_nb, idx_nbh):
    """Closed-form local log score for one node given sorted neighbor indices
    idx_nb and idx_nbh = sorted(idx_nb + [h])."""
    ph = idx_nb.shape[0]
    if n < ph + 1:
        return -np.inf
    if ph == 0:
        ld0 = 0.0
    else:
        a = np.empty((ph, ph))
        for r in range(ph):
            for c in range(ph):
                a[r, c] = U[idx_nb[r], idx_nb[c]]
        ld0 = _chol_logdet(a)
        if np.isnan(ld0):
            return -np.inf
    q = ph + 1
    b = np.empty((q, q))
    for r in range(q):
        for c in range(q):
            b[r, c] = U[idx_nbh[r], idx_nbh[c]]
    ld1 = _chol_logdet(b)
    if np.isnan(ld1):
        return -np.inf
    nf = float(n)
    return (-0.5 * (nf - 1.0) * LOG_PI
            + math.lgamma(0.5 * (nf + ph))
            - math.lgamma(0.5 * (ph + 1.0))
            - 0.5 * (2.0 * ph + 1.0) * math.log(nf)
            - 0.5 * (nf - 1.0) * (ld1 - ld0))


@njit(cache=True)
def _nb_of(adj, h):
    p = adj.shape[0]
    cnt = 0
    for a in range(p):
        if adj[h, a]:
            cnt += 1
    out = np.empty(cnt, np.int64)
    t = 0
    for a in range(p):
        if adj[h, a]:
            out[t] = a
            t += 1
    return out


@njit(cache=True)
def _insert_sorted(arr, x):
    m = arr.shape[0]
    out = np.empty(m + 1, np.int64)
    t = 0
    placed = False
    for v in arr:
        if not placed and x < v:
            out[t] = x
            t += 1
            placed = True
        out[t] = v
        t += 1
    if not placed:
        out[m] = x
    return out


@njit(cache=True)
def _remove_sorted(arr, x):
    m = arr.shape[0]
    out = np.empty(m - 1, np.int64)
    t = 0
    for v in arr:
        if v != x:
            out[t] = v
            t += 1
    return out


@njit(cache=True)
def _node_lm(U, n, adj, h):
    nb = _nb_of(adj, h)
    return _node_logmpl_idx(U, n, nb, _insert_sorted(nb, h))


@njit(cache=True)
def _delta_row(U, n, adj, h, out_row):
    """out_row[a] = node-h log score with a toggled in nb(h), for all a != h."""
    p = U.shape[0]
    nb = _nb_of(adj, h)
    for a in range(p):
        if a == h:
            out_row[a] = -np.inf
        else:
            if adj[h, a]:
                nb2 = _remove_sorted(nb, a)
            else:
                nb2 = _insert_sorted(nb, a)
            out_row[a] = _node_logmpl_idx(U, n, nb2, _insert_sorted(nb2, h))


@njit(cache=True)
def _init_tables(U, n, adj):
    p = U.shape[0]
    node_lm = np.empty(p)
    delta = np.empty((p, p))
    for h in range(p):
        node_lm[h] = _node_lm(U, n, adj, h)
        _delta_row(U, n, adj, h, delta[h])
    return node_lm, delta


@njit(cache=True)
def _rate_scalar(node_lm, delta, adj, lpb, k, i, j):
    """min{exp(log BF + log prior ratio), 1} for edge k = (i, j)."""
    lbf = (delta[i, j] - node_lm[i]) + (delta[j, i] - node_lm[j])
    if adj[i, j]:
        lr = lbf - lpb[k]
    else:
        lr = lbf + lpb[k]
    if np.isnan(lr):
        return 0.0
    if lr >= 0.0:
        return 1.0
    return math.exp(lr)


@njit(cache=True)
def _rates_full(node_lm, delta, adj, lpb, ei, ej, rates):
    m = ei.shape[0]
    s = 0.0
    for k in range(m):
        r = _rate_scalar(node_lm, delta, adj, lpb, k, ei[k], ej[k])
        rates[k] = r
        s += r
    return s


@njit(cache=True)
def _apply_flip(U, n, adj, node_lm, delta, k, i, j):
    """Flip edge k = (i, j); refresh the two node scores and delta rows.
    Returns the change in the total log score."""
    dlm = (delta[i, j] - node_lm[i]) + (delta[j, i] - node_lm[j])
    node_lm[i] = delta[i, j]
    node_lm[j] = delta[j, i]
    v = not adj[i, j]
    adj[i, j] = v
    adj[j, i] = v
    _delta_row(U, n, adj, i, delta[i])
    _delta_row(U, n, adj, j, delta[j])
    return dlm


@njit(cache=True)
def _refresh_incident_rates(node_lm, delta, adj, lpb, eidx, rates, i, j):
    """Recompute the 2p-3 rate entries incident to i or j; return the new total."""
    p = adj.shape[0]
    for a in range(p):
        if a != i:
            lo = i if i < a else a
            hi = a if i < a else i
            kk = eidx[i, a]
            rates[kk] = _rate_scalar(node_lm, delta, adj, lpb, kk, lo, hi)
    for a in range(p):
        if a != j and a != i:
            lo = j if j < a else a
            hi = a if j < a else j
            kk = eidx[j, a]
            rates[kk] = _rate_scalar(node_lm, delta, adj, lpb, kk, lo, hi)
    s = 0.0
    for k in range(rates.shape[0]):
        s += rates[k]
    return s


@njit(cache=True)
def _bd_chunk(U, n, adj, node_lm, delta, rates, edge_on, lpb, ei, ej, eidx,
              uniforms, u_pos, n_steps, accumulate, edge_weight, t_on, fstate,
              istate):
    """Run n_steps birth-death events.

    fstate: [rate_sum, total_logmpl, cum_weight]; istate: [edge_count].
    Edge-inclusion weight is accumulated lazily through t_on (the cumulative
    weight at which each currently-present edge switched on).
    Returns (steps_done, last flipped edge index).
    """
    p = U.shape[0]
    m = rates.shape[0]
    rate_sum = fstate[0]
    total_lm = fstate[1]
    cum_w = fstate[2]
    ne = istate[0]
    last_k = -1
    steps_done = 0
    for s in range(n_steps):
        if rate_sum <= 0.0:
            break
        w = 1.0 / rate_sum
        if accumulate:
            cum_w += w
        target = uniforms[u_pos + s] * rate_sum
        acc = 0.0
        k = -1
        for t in range(m):
            r = rates[t]
            if r > 0.0:
                acc += r
                k = t
                if acc >= target:
                    break
        i = ei[k]
        j = ej[k]
        if accumulate:
            if edge_on[k]:
                edge_weight[k] += cum_w - t_on[k]
            else:
                t_on[k] = cum_w
        total_lm += _apply_flip(U, n, adj, node_lm, delta, k, i, j)
        if edge_on[k]:
            edge_on[k] = False
            ne -= 1
        else:
            edge_on[k] = True
            ne += 1
        rate_sum = _refresh_incident_rates(node_lm, delta, adj, lpb, eidx, rates, i, j)
        last_k = k
        steps_done += 1
    fstate[0] = rate_sum
    fstate[1] = total_lm
    fstate[2] = cum_w
    istate[0] = ne
    return steps_done, last_k


@njit(cache=True)
def _nth_edge(edge_on, t, present):
    """Canonical index of the t-th edge with edge_on == present."""
    m = edge_on.shape[0]
    c = -1
    for k in range(m):
        if edge_on[k] == present:
            c += 1
            if c == t:
                return k
    return m - 1


@njit(cache=True)
def _rj_chunk(U, n, adj, node_lm, delta, edge_on, lpb, ei, ej,
              uniforms, u_pos, n_steps, accumulate, edge_weight, t_on, fstate,
              istate, two_step):
    """Run n_steps reversible-jump iterations (three uniforms per step).

    With the uniform proposal the proposal ratio cancels and the acceptance
    probability equals the birth-death rate for the same move. The two-step
    proposal picks a direction with probability 1/2 and then uniformly within
    the corresponding edge subset, falling back to the uniform proposal when
    the subset on either side of the move would be empty.
    fstate: [unused, total_logmpl, cum_weight]; istate: [edge_count].
    Returns (steps_done, last proposed edge, accepted count).
    """
    m = ei.shape[0]
    total_lm = fstate[1]
    cum_w = fstate[2]
    ne = istate[0]
    last_k = -1
    n_acc = 0
    for s in range(n_steps):
        u_dir = uniforms[u_pos + 3 * s]
        u_pick = uniforms[u_pos + 3 * s + 1]
        u_acc = uniforms[u_pos + 3 * s + 2]
        boundary = ne == 0 or ne == m
        if two_step and not boundary:
            if u_dir < 0.5:
                nfree = m - ne
                t = min(int(u_pick * nfree), nfree - 1)
                k = _nth_edge(edge_on, t, False)
                birth = True
                lqf = -math.log(2.0 * nfree)
            else:
                t = min(int(u_pick * ne), ne - 1)
                k = _nth_edge(edge_on, t, True)
                birth = False
                lqf = -math.log(2.0 * ne)
        else:
            k = min(int(u_pick * m), m - 1)
            birth = not edge_on[k]
            lqf = -math.log(m)
        if two_step:
            ne2 = ne + 1 if birth else ne - 1
            if ne2 == 0 or ne2 == m:
                lqr = -math.log(m)
            elif birth:
                lqr = -math.log(2.0 * ne2)
            else:
                lqr = -math.log(2.0 * (m - ne2))
        else:
            lqr = lqf = 0.0
        i = ei[k]
        j = ej[k]
        lbf = (delta[i, j] - node_lm[i]) + (delta[j, i] - node_lm[j])
        lpr = lpb[k] if birth else -lpb[k]
        lr = lbf + lpr + lqr - lqf
        if lr >= 0.0:
            accept = True
        elif np.isnan(lr):
            accept = False
        else:
            accept = u_acc < math.exp(lr)
        if accept:
            if accumulate:
                if edge_on[k]:
                    edge_weight[k] += cum_w - t_on[k]
                else:
                    t_on[k] = cum_w
            total_lm += _apply_flip(U, n, adj, node_lm, delta, k, i, j)
            if edge_on[k]:
                edge_on[k] = False
                ne -= 1
            else:
                edge_on[k] = True
                ne += 1
            n_acc += 1
        if accumulate:
            cum_w += 1.0
        last_k = k
    fstate[1] = total_lm
    fstate[2] = cum_w
    istate[0] = ne
    return n_steps, last_k, n_acc
