import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

with open("requirements.txt", "r") as fh:
    install_requires = [r.strip() for r in fh.readlines() if r.strip() and not r.startswith('#')]

setuptools.setup(
    name="tgm-fdtd",
    version="0.1.0",
    license="Apache License",
    description="1D FDTD solver for Lorentz media with a recursive Green-function polarization update",
    long_description=long_description,
    long_description_content_type="text/markdown",
    keywords=["fdtd", "electromagnetics", "dispersion", "lorentz", "green function"],
    packages=setuptools.find_packages(),
    package_data={"tgm_fdtd": ["data/*.cfg"]},
    entry_points={
        "console_scripts": ["tgm-fdtd=tgm_fdtd.cli:main"],
    },
    classifiers=[
        'Intended Audience :: Science/Research',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3 :: Only',
        'Topic :: Scientific/Engineering :: Physics',
    ],
    python_requires=">=3.8",
    install_requires=install_requires,
    extras_require={
        "test": ["pytest", "hypothesis"],
    },
)
