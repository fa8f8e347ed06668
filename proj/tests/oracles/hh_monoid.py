"""HH_i(F_2[M_n(F_2)]; B) for B = k (trivial) or B = dt (U* (x) V, i.e. n x n matrices
with left and right multiplication), i <= imax, from the cyclic bar complex.

Usage: hh_monoid.py n {k|dt} imax
"""
import sys
n=int(sys.argv[1]); kind=sys.argv[2]; imax=int(sys.argv[3])
def mats(r,c): return [tuple((b>>(i*c))&((1<<c)-1) for i in range(r)) for b in range(1<<(r*c))]
def mul(a,b):
    out=[]
    for row in a:
        v=0;k=0
        while row:
            if row&1: v^=b[k]
            row>>=1;k+=1
        out.append(v)
    return tuple(out)
M=mats(n,n); S=len(M); ix={m:i for i,m in enumerate(M)}
T=[[ix[mul(a,b)] for b in M] for a in M]  # T[a][b] = a∘b
if kind=='k':
    dB=1
    def L(a,b): return [b]     # b index -> list of result basis indices (F2)
    def R(a,b): return [b]
else:
    dB=n*n  # basis E_{rc}, index r*n+c ; L(a) X = a X ; R(a) X = X a
    def L(a,bi):
        r,c=divmod(bi,n); A=M[a]
        return [rr*n+c for rr in range(n) if (A[rr]>>r)&1]
    def R(a,bi):
        r,c=divmod(bi,n); A=M[a]
        # (E_rc A)_{r,c'} = A[c][c']
        return [r*n+cc for cc in range(n) if (A[c]>>cc)&1]
def d(q, tup, b):
    # returns dict index->coef over F2 of d_q(tup;b) in C_{q-1}
    out={}
    def add(t,bs):
        for bb in bs:
            key=(t,bb); out[key]=out.get(key,0)^1
    if q==0: return {}
    add(tup[1:], L(tup[0],b))
    for i in range(1,q):
        t=tup[:i-1]+(T[tup[i]][tup[i-1]],)+tup[i+1:]
        add(t,[b])
    add(tup[:-1], R(tup[-1],b))
    return {k:v for k,v in out.items() if v}
import itertools
def enc(t,b):
    x=0
    for a in t: x=x*S+a
    return x*dB+b
ranks={}
for q in range(1,imax+2):
    piv={}
    for tup in itertools.product(range(S),repeat=q):
        for b in range(dB):
            v=0
            for (t,bb) in d(q,tup,b): v^=1<<enc(t,bb)
            while v:
                h=v.bit_length()-1
                if h in piv: v^=piv[h]
                else: piv[h]=v; break
    ranks[q]=len(piv)
for i in range(imax+1):
    dim=S**i*dB
    print(f"n={n} B={kind} HH_{i} =", dim-ranks.get(i,0)-ranks[i+1])
