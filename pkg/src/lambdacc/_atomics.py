"""Lock-free atomic array operations for use inside numba kernels.

numba does not expose CPU atomics, so these intrinsics emit LLVM
``atomicrmw`` instructions directly. All three are linearizable
read-modify-write operations with monotonic ordering, which is the
consistency level the asynchronous move schedule relies on: concurrent
cluster-mass updates never lose increments, while readers may observe
stale values.
"""

from __future__ import annotations

from numba import types
from numba.core import cgutils
from numba.extending import intrinsic


def _rmw_intrinsic(op: str, numba_dtype):
    def decl(typingctx, arr_ty, idx_ty, val_ty):
        if not isinstance(arr_ty, types.Array) or arr_ty.dtype != numba_dtype:
            return None
        sig = numba_dtype(arr_ty, types.intp, numba_dtype)

        def codegen(context, builder, signature, args):
            arr, idx, val = args
            ary = context.make_array(signature.args[0])(context, builder, arr)
            ptr = cgutils.get_item_pointer(context, builder, signature.args[0],
                                           ary, [idx], wraparound=False)
            return builder.atomic_rmw(op, ptr, val, "monotonic")

        return sig, codegen

    return decl


#: atomically ``arr[idx] += val`` on a float64 array, returning the old value
atomic_add_f64 = intrinsic(_rmw_intrinsic("fadd", types.float64))

#: atomically ``arr[idx] += val`` on an int64 array, returning the old value
atomic_add_i64 = intrinsic(_rmw_intrinsic("add", types.int64))

#: atomically store ``val`` into an int64 array slot, returning the old value
atomic_store_i64 = intrinsic(_rmw_intrinsic("xchg", types.int64))
