package com.fixture.sm02_benign;

import android.app.Activity;
import android.content.IntentFilter;

public class MainActivity extends Activity {
    IntentFilter filter() {
        IntentFilter f = new IntentFilter("com.fixture.REFRESH");
        f.addCategory("android.intent.category.DEFAULT");
        return f;
    }
}
