from setuptools import setup

setup(
    name='syncline',
    version='0.1.0',
    description=('Worst-case error budgets relating time synchronization '
                 'accuracy to sensor fusion accuracy on moving robots.'),
    long_description=open('README.rst').read(),
    license='BSD',
    packages=['syncline'],
    python_requires='>=3.8',
    install_requires=['numpy>=1.17'],
    entry_points={
        'console_scripts': ['syncline = syncline.cli:main'],
    },
    classifiers=[
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering',
    ],
)
