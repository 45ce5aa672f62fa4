from setuptools import setup, find_packages

setup(
    name="spinwav",
    version="0.1",
    description="Directional spin scale-discretised wavelets on the sphere",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        "numpy>=1.26",
        "scipy>=1.11",
        "PyWavelets>=1.5",
    ],
    extras_require={
        "test": ["pytest>=7.4"],
    },
    entry_points={
        "console_scripts": ["spinwav=spinwav.cli:main"],
    },
    python_requires=">=3.12",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
)
