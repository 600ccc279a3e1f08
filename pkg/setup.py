from setuptools import setup, find_packages
import codecs

setup(
    name='convexcomp',
    version='0.1.dev0',
    license='MIT',
    description='Exact convex state spaces, their composites, and separability certificates',
    long_description=codecs.open('README.md', "r", "utf-8").read(),
    long_description_content_type='text/markdown',
    classifiers=[
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
    ],
    keywords='convex geometry, tensor products, entanglement, linear programming',
    packages=find_packages(where='src'),
    package_dir={'': 'src'},
    include_package_data=True,
    zip_safe=False,
    platforms='any',
    python_requires='>=3.9',
    install_requires=["tqdm", "tabulate"],
    entry_points={"console_scripts": ["convexcomp=convexcomp.cli:main"]},
    extras_require={
        'dev': ['wheel', 'twine'],
        'test': [
            'pytest>=4.3',
            'pytest-cov',
            'coverage>=4.2',
        ],
    },
)
