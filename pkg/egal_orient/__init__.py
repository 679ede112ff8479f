"""图定向工具包：平等定向、区间路由与集合覆盖归约"""

__version__ = "1.0.0"
