# SPDX-License-Identifier: Apache-2.0
#
# Regenerates the SSIM reference values in tests/references.hpp with scikit-image.
# The pair generator mirrors noisy_pair() in tests/support.hpp.

import numpy as np
from skimage.metrics import structural_similarity
M=(1<<64)-1
class SM:
    def __init__(s,seed): s.x=seed&M
    def next(s):
        s.x=(s.x+0x9E3779B97F4A7C15)&M
        z=s.x
        z=((z^(z>>30))*0xBF58476D1CE4E5B9)&M
        z=((z^(z>>27))*0x94D049BB133111EB)&M
        return z^(z>>31)
H,W=24,32
vals=[]
for i in range(20):
    r=SM(1000+i)
    a=np.zeros((H,W,3),np.uint8); b=np.zeros((H,W,3),np.uint8)
    for y in range(H):
        for x in range(W):
            for c in range(3):
                av=r.next()%256
                amp=5+15*i; bv=min(255,max(0,av+int(r.next()%(2*amp+1))-amp))
                a[y,x,c]=av; b[y,x,c]=bv
    vals.append(structural_similarity(a,b,channel_axis=2,gaussian_weights=True,sigma=1.5,use_sample_covariance=False,data_range=255))
print(",\n".join("    %.17g"%v for v in vals))
