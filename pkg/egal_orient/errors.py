"""异常定义"""


class EgalOrientError(Exception):
    """所有领域异常的基类"""


class GraphParseError(EgalOrientError):
    """图文件格式错误"""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OrientationParseError(GraphParseError):
    """定向文件格式错误"""


class SetCoverParseError(GraphParseError):
    """集合覆盖文件格式错误"""


class ContractViolation(EgalOrientError):
    """调用方违反了前置条件"""


class NotStronglyConnectedError(ContractViolation):
    """要求强连通的定向不是强连通的"""


class NotStronglyOrientableError(EgalOrientError):
    """图不连通或含桥，不存在强连通定向"""

    def __init__(self, message: str, bridge: tuple[int, int] | None = None):
        self.bridge = bridge
        super().__init__(message)


class DomainError(EgalOrientError):
    """代价函数在所需的入度处无定义"""


class RefusedError(EgalOrientError):
    """输入超出穷举规模上限"""


class InfeasibleError(EgalOrientError):
    """约束条件下不存在任何定向"""


class UsageError(EgalOrientError):
    """命令行参数与输入不相容，例如顶点编号越界"""


class InternalInconsistency(EgalOrientError):
    """内部不变量被破坏，只可能是实现缺陷"""
