"""egal-orient 使用示例"""

import os
import subprocess
import sys

from egal_orient.storage import load_graph, load_set_cover, serialize_orientation
from egal_orient.tools import orientation_tools

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


def data_file(name):
    return os.path.join(DATA_DIR, name)


def run_cli(*args):
    """以子进程方式运行命令行并打印输出"""
    process = subprocess.run(
        [sys.executable, "-m", "egal_orient", *args],
        capture_output=True,
        text=True,
    )
    print(f"$ egal-orient {' '.join(args)}")
    if process.stdout:
        print(process.stdout.rstrip())
    if process.stderr:
        print(process.stderr.rstrip())
    print(f"(退出码 {process.returncode})")
    return process.returncode


def example_minlex():
    """示例：无约束字典序最优定向"""
    print("=== 无约束定向示例 ===")
    run_cli("minlex", data_file("k4.g"), "--trace")


def example_strong():
    """示例：强连通定向与证书"""
    print("\n=== 强连通定向示例 ===")
    run_cli("sc-minmax", data_file("bowtie.g"), "--certificate", "--compare-lex")

    # 有桥的图没有强连通定向
    run_cli("sc-minmax", data_file("path3.g"))


def example_strip():
    """示例：剥离得到的无环定向"""
    print("\n=== 无环定向示例 ===")
    run_cli("strip", data_file("k4.g"))


def example_routing():
    """示例：区间路由表与转发"""
    print("\n=== 区间路由示例 ===")
    run_cli("route-tables", data_file("ears.g"))
    run_cli("route-sim", data_file("ears.g"), "--pairs", "0,5")

    # 顶点编号越界属于用法错误，退出码 2
    run_cli("route-sim", data_file("ears.g"), "--pairs", "0,9")


def example_oracle():
    """示例：穷举求解器"""
    print("\n=== 穷举求解示例 ===")
    run_cli("oracle", data_file("k4.g"), "--constraint", "acyclic", "--objective", "minmax")
    run_cli("oracle", data_file("triangle.g"), "--objective", "convex:square")


def example_reduction():
    """示例：集合覆盖归约的正反两个方向"""
    print("\n=== 集合覆盖归约示例 ===")
    inst = load_set_cover(data_file("three_sets.sc"))
    verified = orientation_tools.gadget_verify(inst, [0, 2])
    print(f"k = {verified['k']}，覆盖 {{0, 2}} 对应的定向中入度 ≥ k 的顶点数: {verified['high_count']}")

    text = serialize_orientation(verified["orientation"])
    report = orientation_tools.gadget_extract(inst, text)["report"]
    print(f"从定向还原出的覆盖: {report.cover}（有效: {report.is_cover}）")


def example_api():
    """示例：直接调用 Python 接口"""
    print("\n=== Python 接口示例 ===")
    g = load_graph(data_file("bowtie.g"))
    result = orientation_tools.minlex(g, seed=1)
    print(f"入度序列: {result['sequence'].values}，翻转次数: {len(result['trace'])}")
    print(f"强连通下界: {orientation_tools.bound_sc(g)['bound']}")


def main():
    """运行所有示例"""
    print("egal-orient 使用示例")
    print("=" * 50)

    try:
        example_minlex()
        example_strong()
        example_strip()
        example_routing()
        example_oracle()
        example_reduction()
        example_api()

        print("\n" + "=" * 50)
        print("所有示例运行完成！")

    except Exception as e:
        print(f"运行示例时发生错误: {e}")


if __name__ == "__main__":
    main()
