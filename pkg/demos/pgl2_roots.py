"""Square roots in PGL_2 and the fields they need."""

from iterfield import QQ, Mat2, pgl2_nth_root, power_class, root_decompose

B = Mat2(1, 1, 1, 0, field=QQ)  # Fibonacci matrix
A = pgl2_nth_root(B, 2)
print("root field degree:", A.field.degree)
P, rational = power_class(A, 2)
print("A^2 projectively rational:", rational)

dec = root_decompose(A, 2)
print("diagonalizing field degree:", dec.Kprime.degree)
print("eigenvalue field degree:   ", dec.F.degree)
print("M D M^-1 == A:", dec.M * dec.D * dec.M.inverse() == dec.A)
