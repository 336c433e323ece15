import sys
from qncsim.cli import main

# 用法: python run.py <command> [options]，配置取自 QNCSIM_ENV 与 QNCSIM_* 环境变量
if __name__ == '__main__':
    sys.exit(main(sys.argv[1:]))
