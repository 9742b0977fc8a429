from setuptools import setup
setup(
        name='spsys',
        packages=['spsys'],
        version='2026.1',
        install_requires=[
            "numpy",
            "scipy",
            "sympy",
            ],
        entry_points={
            'console_scripts': ['spectra=spsys.cli:main'],
            },
        description='Serre spectral systems of towers of fibrations',
        keywords=['homology', 'spectral sequence', 'effective homology'],
        classifiers=[],
        )
