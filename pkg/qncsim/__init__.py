import os
from typing import Optional
from flask import Flask
from qncsim.config import config

__version__ = '0.1.0'


def create_app(config_name: Optional[str] = None) -> Flask:
    """
    Flask应用工厂函数

    Args:
        config_name: 配置名称，缺省取 QNCSIM_ENV 或 default

    Returns:
        Flask应用实例（仅承载配置、日志与命令行）
    """
    if config_name is None:
        config_name = os.environ.get('QNCSIM_ENV', 'default')
    app = Flask(__name__)

    # 加载配置，QNCSIM_<KEY> 环境变量覆盖同名配置
    app.config.from_object(config[config_name])
    app.config.from_prefixed_env('QNCSIM')

    app.logger.setLevel(app.config['LOG_LEVEL'])

    # 注册命令蓝图
    from qncsim.commands import (analytic_bp, correlate_bp, threshold_bp, enumerate_bp,
                                 circuit_bp, mc_bp, sweep_bp)

    for blueprint in (analytic_bp, correlate_bp, threshold_bp, enumerate_bp, circuit_bp, mc_bp, sweep_bp):
        app.register_blueprint(blueprint)

    return app
