# -*- coding: utf8 -*-

"""
Binary trees built with ``&``. In this package ``a & b`` always means "both
apply at once": catalog fields that must all parse, or the budgets of fusion
stages chained one after another.

Nodes have exactly two children, ``left`` and ``right``. Leaves and trees are
separate classes so that fields and budgets can each extend the half they
need.
"""


class Tree(object):

    #: Class of the node that ``&`` builds. None means this node's own class.
    tree_class = None

    def __init__(self, left, right):
        self.left = left
        self.right = right

    def __iter__(self):
        """
        Leaves in order, left to right.
        """
        for side in (self.left, self.right):
            for leaf in side:
                yield leaf

    def __len__(self):
        return sum(1 for _ in self)

    def __and__(self, other):
        klass = self.tree_class or type(self)
        return klass(left=self, right=other)


class Leaf(object):

    #: Class of the node that ``&`` builds; e.g. fields build FieldTrees.
    tree_class = Tree

    def __iter__(self):
        yield self

    def __and__(self, other):
        return self.tree_class(left=self, right=other)
