from setuptools import setup, find_packages

setup(name="plcp_radar",
      version='0.1',
      description='Detection performance and beamwidth optimization of automotive radars in street networks '
                  'modelled as a Poisson line Cox process',
      license='MIT',
      packages=find_packages(exclude=['tests', 'tests.*']),
      test_suite='nose.collector',
      tests_require=['nose'],
      install_requires=[
        'joblib>=0.12.2',
        'PyPrind',
        'numpy>=1.17',
        'scipy',
        'matplotlib',
      ],
      entry_points={
        'console_scripts': ['plcp-radar=plcp_radar.cli.main:console_main'],
      },
zip_safe=False)
