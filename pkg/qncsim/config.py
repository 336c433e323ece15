import os


class Config:
    """基础配置类"""
    # 输出目录，未设置时输出到标准输出
    OUTPUT_DIR = os.environ.get('QNCSIM_OUTPUT_DIR')

    DEFAULT_SEED = int(os.environ.get('QNCSIM_DEFAULT_SEED', 20240101))
    IDLE_SCHEDULE = os.environ.get('QNCSIM_IDLE_SCHEDULE', 'slice')

    # 蒙特卡洛停止规则
    MC_TARGET_ERROR_EVENTS = 20000
    MC_MAX_TRIALS = 10 ** 8
    MC_BATCH_SIZE = 10000
    MC_WORKERS = int(os.environ.get('QNCSIM_MC_WORKERS', 1))

    LOG_LEVEL = os.environ.get('QNCSIM_LOG_LEVEL', 'WARNING')


class DevelopmentConfig(Config):
    """开发环境配置"""
    DEBUG = True
    LOG_LEVEL = os.environ.get('QNCSIM_LOG_LEVEL', 'INFO')


class ProductionConfig(Config):
    """生产环境配置"""
    DEBUG = False


class TestingConfig(Config):
    """测试环境配置"""
    TESTING = True
    OUTPUT_DIR = None
    DEFAULT_SEED = 12345
    MC_TARGET_ERROR_EVENTS = 2000
    MC_MAX_TRIALS = 200000
    MC_BATCH_SIZE = 2000
    MC_WORKERS = 1


# 配置字典
config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': ProductionConfig
}
