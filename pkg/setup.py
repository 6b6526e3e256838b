from setuptools import setup, find_packages
import thermodarcy

with open('README.md', 'r') as fh:
    long_description = fh.read()

setup(
    name='thermodarcy',
    version=thermodarcy.__version__,
    author=thermodarcy.__author__,
    description=thermodarcy.__doc__,
    long_description=long_description,
    long_description_content_type='text/markdown',
    license="MIT",
    packages=find_packages(exclude=['tests', 'tests.*']),
    classifiers=[
         'Programming Language :: Python :: 3',
         'License :: OSI Approved :: MIT License',
         'Operating System :: OS Independent',
         'Topic :: Scientific/Engineering :: Mathematics',
    ],
    python_requires='>=3.7',
    install_requires=[
        'Click',
        'toml',
        'numpy',
        'scipy',
        'meshio',
    ],
    entry_points='''
        [console_scripts]
        thermodarcy=thermodarcy.cli:cli
    ''',
)
