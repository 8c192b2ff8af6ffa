from app.models.laurent import LaurentInN
from app.models.partition import BlockRoleLabeling, SetPartition
from app.models.polynomial import DiagonalPolynomial, ScalarPolynomial
from app.models.process import ProcessModel
from app.models.sequences import CumulantSeq, MomentSeq, SeriesQ
