import setuptools

with open("README.rst", "r") as fh:
    long_description = fh.read()

install_requires = [
   'numpy>=1.20', 'mpmath>=1.2', 'Pillow>=8.0', 'typing-extensions>=3.10.0.0'
]

tests_require = [
      'pytest', 'pytest-mock', 'pytest-asyncio', 'mock', 'hypothesis'
]

setuptools.setup(
    name="fastescape",
    version="1.1.0",
    description="Area estimates for the fast escaping set of f(z) = P(e^z) / e^z, with orbit certification, "
                "grid square density sampling, distortion checks and escape depth rendering",
    long_description=long_description,
    long_description_content_type="text/x-rst",
    keywords=['complex dynamics', 'transcendental dynamics', 'escaping set', 'fast escaping set', 'sine family',
              'exponential sums', 'area', 'Lebesgue measure', 'fractal', 'numpy'],
    include_package_data=True,
    package_dir={'fastescape': 'lib'},
    packages=['fastescape', 'fastescape.polyCore', 'fastescape.dynamics', 'fastescape.distortion',
              'fastescape.census', 'fastescape.render', 'fastescape.cli'],
    install_requires=install_requires,
    tests_require=tests_require,
    entry_points={'console_scripts': ['fastescape=fastescape.cli.commandLine:run']},
    license='MIT',
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires='>=3.8',
)
